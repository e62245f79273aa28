#pragma once

// One-shot report on a measure: diagram statistics, rule check, both square
// root questions, the closed form when it applies, and shift tables.

#include "alsq/closed_form.hpp"
#include "alsq/diagram.hpp"
#include "alsq/io.hpp"
#include "alsq/product_diagram.hpp"
#include "alsq/rules.hpp"
#include "alsq/shift.hpp"
#include "alsq/solver.hpp"

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

namespace alsq {

struct AnalyzeOptions {
  NumericConfig cfg;
  SolveOptions solve;
  std::size_t shift_terms = 0;  // 0 = no shift tables
};

struct ShiftTables {
  WeightSequence alpha, alpha_tilde;
  MomentSequence gamma, gamma_tilde;
};

struct AnalysisReport {
  std::string digest;
  std::size_t p = 0;
  ScalarMode mode = ScalarMode::Exact;
  CardinalityReport card;
  std::optional<GeometricProfile> geometric;
  URClassification ur;
  std::optional<Certificate> structural;
  Verdict sqrt_verdict;
  Verdict aluthge_verdict;
  std::optional<SmallVerdict> small;
  bool agreement = true;  // closed form and generic solvers give the same outcome
  std::optional<ShiftTables> shift;
  std::string diagram;  // empty when p exceeds the layout limit
};

/// 64-bit FNV-1a, lowercase hex.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class W>
AnalysisReport analyze(const AtomicMeasure<W>& mu, const AnalyzeOptions& opt = {}) {
  AnalysisReport r;
  r.digest = fnv1a_hex(emit_measure(AnyMeasure(mu)));
  r.p = mu.size();
  r.mode = Field<W>::mode;
  auto support = mu.support();
  auto d = pair_diagram(support);
  r.card = cardinality_check(d);
  r.geometric = geometric_profile(support);
  r.ur = classify_ur(d);
  r.structural = structural_certificate(d);
  r.sqrt_verdict = sqrt_of(mu, opt.cfg, opt.solve);
  r.aluthge_verdict = aluthge_subnormal(mu, opt.cfg, opt.solve);
  if (r.p >= 3 && r.p <= 6) {
    r.small = classify_small(mu, opt.cfg);
    Outcome o = r.small->verdict.outcome;
    r.agreement = o == r.aluthge_verdict.outcome && o == r.sqrt_verdict.outcome;
  }
  if (opt.shift_terms > 0) {
    unsigned bits = opt.cfg.precision_bits;
    ShiftTables t;
    t.alpha = weights_from_measure(mu, opt.shift_terms + 1, bits);
    t.alpha_tilde = aluthge_weights(t.alpha);
    t.gamma = berger_moments(mu, opt.shift_terms + 1, bits);
    t.gamma_tilde = moments_from_weights(t.alpha_tilde, bits);
    t.alpha.pop_back();
    r.shift = std::move(t);
  }
  if (r.p <= kMaxDiagramAtoms) r.diagram = render_diagram(d);
  return r;
}

inline AnalysisReport analyze(const AnyMeasure& mu, const AnalyzeOptions& opt = {}) {
  return std::visit([&](const auto& m) { return analyze(m, opt); }, mu);
}

inline Json shift_to_json(const ShiftTables& t) {
  auto col = [](const std::vector<Real>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.to_string(30));
    return a;
  };
  Json j;
  j["alpha"] = col(t.alpha);
  j["alpha_tilde"] = col(t.alpha_tilde);
  j["gamma"] = col(t.gamma);
  j["gamma_tilde"] = col(t.gamma_tilde);
  return j;
}

inline Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["digest"] = r.digest;
  j["p"] = r.p;
  j["mode"] = to_string(r.mode);
  j["card"] = r.card.card;
  j["bounds"] = {r.card.lower, r.card.upper ? Json(*r.card.upper) : Json(nullptr)};
  j["bounds_violated"] = r.card.violated;
  j["geometric"] = r.geometric ? Json{{"a", r.geometric->a.to_string()}, {"r", r.geometric->r.to_string()}}
                               : Json(nullptr);
  Json ur = Json::array(), nur = Json::array();
  for (const auto& x : r.ur.ur) ur.push_back(x.to_string());
  for (const auto& x : r.ur.nur) nur.push_back(x.to_string());
  j["uniquely_represented"] = ur;
  j["shared"] = nur;
  j["structural"] = r.structural ? certificate_to_json(*r.structural) : Json(nullptr);
  j["sqrt"] = verdict_to_json(r.sqrt_verdict);
  j["aluthge"] = verdict_to_json(r.aluthge_verdict);
  if (r.small) {
    Json s = verdict_to_json(r.small->verdict);
    s["case"] = to_string(r.small->which);
    j["closed_form"] = s;
  } else {
    j["closed_form"] = nullptr;
  }
  j["agreement"] = r.agreement;
  j["shift"] = r.shift ? shift_to_json(*r.shift) : Json(nullptr);
  return j;
}

inline std::string witness_text(const AnyMeasure& m) {
  return std::visit(
      [](const auto& mu) {
        std::string out;
        for (std::size_t i = 0; i < mu.size(); ++i) {
          out += i ? " + " : "";
          out += "(" + Field<typename std::decay_t<decltype(mu)>::weight_type>::to_string(mu.weight(i)) + ") d[" +
                 mu.position(i).to_string() + "]";
        }
        return out;
      },
      m);
}

inline std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << to_string(v.outcome);
  if (v.witness) out << "\n  witness: " << witness_text(*v.witness);
  if (v.certificate) out << "\n  certificate: " << v.certificate->to_string();
  if (v.residual) out << "\n  residual: " << v.residual->to_string(6);
  out << "\n  precision: " << (v.precision_bits ? std::to_string(v.precision_bits) + " bits" : "exact");
  if (v.candidates) out << "\n  candidate supports: " << v.candidates;
  if (!v.note.empty()) out << "\n  note: " << v.note;
  return out.str();
}

inline std::string report_text(const AnalysisReport& r, bool with_diagram) {
  std::ostringstream out;
  out << "digest     " << r.digest << "\n";
  out << "atoms      " << r.p << " (" << to_string(r.mode) << ")\n";
  out << "card       " << r.card.card << "  bounds [" << r.card.lower << ", "
      << (r.card.upper ? std::to_string(*r.card.upper) : "-") << "]" << (r.card.violated ? "  VIOLATED" : "") << "\n";
  out << "geometric  "
      << (r.geometric ? "(" + r.geometric->a.to_string() + ", " + r.geometric->r.to_string() + ")" : "no") << "\n";
  out << "unique     " << r.ur.ur.size() << " of " << r.ur.ur.size() + r.ur.nur.size() << " products\n";
  out << "rules      " << (r.structural ? r.structural->to_string() : "pass") << "\n";
  out << "sqrt       " << verdict_text(r.sqrt_verdict) << "\n";
  out << "aluthge    " << verdict_text(r.aluthge_verdict) << "\n";
  if (r.small) {
    out << "closed     " << to_string(r.small->which) << ": " << verdict_text(r.small->verdict) << "\n";
    out << "agreement  " << (r.agreement ? "yes" : "NO") << "\n";
  }
  if (r.shift) {
    auto cell = [](const Real& x) {
      std::string t = x.to_string(20);
      return t + std::string(t.size() < 26 ? 26 - t.size() : 1, ' ');
    };
    out << "\n  n  " << std::left << std::setw(26) << "alpha_n" << std::setw(26) << "alpha~_n" << std::setw(26)
        << "gamma_n" << "gamma~_n\n" << std::right;
    for (std::size_t n = 0; n < r.shift->alpha.size(); ++n)
      out << std::setw(3) << n << "  " << cell(r.shift->alpha[n]) << cell(r.shift->alpha_tilde[n])
          << cell(r.shift->gamma[n]) << r.shift->gamma_tilde[n].to_string(20) << "\n";
  }
  if (with_diagram && !r.diagram.empty()) out << "\n" << r.diagram;
  return out.str();
}

}  // namespace alsq
