#pragma once

// JSON reading and writing of measures and verdicts.
//
//   {"radical_base": "2", "mode": "rational",
//    "atoms": [{"pos_q": "3", "pos_k": 1, "weight": "1/2"}, ...]}
//
// An atom sits at pos_q * sqrt(radical_base)^pos_k. Supports mixing several
// radicands carry "pos_radicand" per atom instead (position pos_q * sqrt(r)).

#include "alsq/measure.hpp"
#include "alsq/numeric/field.hpp"
#include "alsq/verdict.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace alsq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "alsq/1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string field_text(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw FormatError(where + ": \"" + key + "\" must be a string");
}

inline Rational positive_rational(const std::string& text, const std::string& where) {
  Rational q;
  try {
    q = parse_rational(text);
  } catch (const std::exception& e) {
    throw FormatError(where + ": malformed rational \"" + text + "\"");
  }
  if (sgn(q) <= 0) throw FormatError(where + ": \"" + text + "\" must be positive");
  return q;
}

template <class W>
AtomicMeasure<W> read_atoms(const Json& doc, const Position& root_base, const NumericConfig& cfg) {
  if (!doc.contains("atoms") || !doc.at("atoms").is_array()) throw FormatError("measure: missing \"atoms\" array");
  std::vector<Atom<W>> atoms;
  std::size_t i = 0;
  for (const auto& a : doc.at("atoms")) {
    std::string where = "atom " + std::to_string(i);
    if (!a.is_object()) throw FormatError(where + ": expected an object");
    Position x(positive_rational(field_text(a, "pos_q", where), where + " pos_q"));
    if (a.contains("pos_radicand")) {
      Rational r = positive_rational(field_text(a, "pos_radicand", where), where + " pos_radicand");
      x = x * Position::sqrt_of(r);
    } else {
      long k = 0;
      if (a.contains("pos_k")) {
        if (!a.at("pos_k").is_number_integer()) throw FormatError(where + ": pos_k must be 0 or 1");
        k = a.at("pos_k").get<long>();
      }
      if (k != 0 && k != 1) throw FormatError(where + ": pos_k must be 0 or 1");
      if (k == 1) x = x * root_base;
    }
    std::string wt = field_text(a, "weight", where);
    W w;
    try {
      w = Field<W>::parse(wt, cfg);
    } catch (const std::exception& e) {
      throw FormatError(where + ": malformed weight \"" + wt + "\"");
    }
    atoms.push_back({x, std::move(w)});
    ++i;
  }
  try {
    return AtomicMeasure<W>::from_atoms(std::move(atoms), cfg);
  } catch (const MeasureError& e) {
    if (e.atom()) throw FormatError("atom " + std::to_string(*e.atom()) + ": " + e.reason());
    throw FormatError(std::string("measure: ") + e.what());
  }
}

}  // namespace detail

inline AnyMeasure measure_from_json(const Json& doc, const NumericConfig& cfg = {}) {
  if (!doc.is_object()) throw FormatError("measure: expected a JSON object");
  std::string base_text = doc.contains("radical_base") ? detail::field_text(doc, "radical_base", "measure") : "1";
  Rational base = detail::positive_rational(base_text, "bad radical base");
  Position root_base = Position::sqrt_of(base);
  std::string mode = doc.contains("mode") ? detail::field_text(doc, "mode", "measure") : "rational";
  if (mode == "rational") return detail::read_atoms<Surd>(doc, root_base, cfg);
  if (mode == "real") return detail::read_atoms<Real>(doc, root_base, cfg);
  throw FormatError("measure: mode must be \"rational\" or \"real\", got \"" + mode + "\"");
}

inline AnyMeasure parse_measure(const std::string& text, const NumericConfig& cfg = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("measure: invalid JSON: ") + e.what());
  }
  return measure_from_json(doc, cfg);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AnyMeasure load_measure(const std::string& path, const NumericConfig& cfg = {}) {
  return parse_measure(read_file(path), cfg);
}

template <class W>
Json measure_to_json(const AtomicMeasure<W>& mu) {
  std::set<Integer> radicands;
  for (const auto& a : mu.atoms())
    if (a.position.radicand() != 1) radicands.insert(a.position.radicand());
  bool per_atom = radicands.size() > 1;
  Integer base = radicands.size() == 1 ? *radicands.begin() : Integer(1);
  Json doc;
  doc["radical_base"] = base.get_str();
  doc["mode"] = to_string(Field<W>::mode);
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json j;
    j["pos_q"] = a.position.coeff().get_str();
    bool radical = a.position.radicand() != 1;
    j["pos_k"] = radical ? 1 : 0;
    if (per_atom && radical) j["pos_radicand"] = a.position.radicand().get_str();
    j["weight"] = Field<W>::to_string(a.weight);
    atoms.push_back(std::move(j));
  }
  doc["atoms"] = std::move(atoms);
  return doc;
}

inline Json measure_to_json(const AnyMeasure& mu) {
  return std::visit([](const auto& m) { return measure_to_json(m); }, mu);
}

inline std::string emit_measure(const AnyMeasure& mu) { return measure_to_json(mu).dump(2) + "\n"; }

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  j["rule"] = rule_id(c.rule);
  j["indices"] = c.indices;
  j["detail"] = c.detail;
  return j;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["schema"] = kSchema;
  j["outcome"] = to_string(v.outcome);
  j["witness"] = v.witness ? measure_to_json(*v.witness) : Json(nullptr);
  j["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
  j["residual"] = v.residual ? Json(v.residual->to_string(20)) : Json(nullptr);
  j["precision_bits"] = v.precision_bits;
  j["candidates"] = v.candidates;
  j["note"] = v.note;
  return j;
}

}  // namespace alsq
