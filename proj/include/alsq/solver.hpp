#pragma once

// Deciders for the two square-root questions:
//   sqrt_of(mu):           nu >= 0 with nu * nu = mu
//   aluthge_subnormal(mu): nu >= 0 on supp(mu) with nu * nu = mu * t mu
//
// Exact stages first (unique products, single-unknown elimination, exact
// compatibility checks); whatever stays open is handed to a verified
// numeric search, which can produce a witness but never an impossibility.

#include "alsq/measure.hpp"
#include "alsq/newton.hpp"
#include "alsq/quadratic_system.hpp"
#include "alsq/rules.hpp"
#include "alsq/verdict.hpp"

#include <string>
#include <variant>
#include <vector>

namespace alsq {

struct SolveOptions {
  bool structural_rules = true;  // run the combinatorial rule engine first
  bool elimination = true;       // solve single-unknown equations exactly
};

namespace detail {

template <class W>
AtomicMeasure<W> measure_from(const std::vector<Position>& xs, const std::vector<W>& ws) {
  std::vector<Atom<W>> atoms;
  for (std::size_t i = 0; i < xs.size(); ++i) atoms.push_back({xs[i], ws[i]});
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

/// Accepts a real candidate when nu * nu matches the target atom by atom.
inline Verdict verify_real(const QuadraticSystem<Real>& sys, const AtomicMeasure<Real>& target,
                           const std::vector<Real>& b, const NumericConfig& cfg, unsigned bits,
                           const std::string& note) {
  for (const auto& v : b)
    if (!Field<Real>::positive(v, cfg)) return Verdict::undetermined("numeric candidate has a vanishing weight", bits);
  auto nu = measure_from(sys.support, b);
  auto err = max_relative_error(convolve(nu, nu), target, bits);
  if (!err || !(*err < cfg.tol(bits))) {
    Verdict v = Verdict::undetermined("numeric candidate failed verification", bits);
    if (err) v.residual = *err;
    return v;
  }
  Verdict v;
  v.outcome = Outcome::Witness;
  v.witness = nu;
  v.residual = *err;
  v.precision_bits = bits;
  v.note = note;
  return v;
}

inline Verdict solve_real_once(const QuadraticSystem<Real>& sys, const AtomicMeasure<Real>& target,
                               const NumericConfig& cfg, const SolveOptions& opt, unsigned bits) {
  NumericConfig c = cfg;
  c.precision_bits = bits;
  Reduction<Real> red = propagate_ur(sys, c);
  if (!red.conflict && opt.elimination) eliminate(sys, red, c);
  if (!red.conflict)
    if (auto bad = check_assigned(sys, red.partial, c)) red.conflict = bad;
  if (red.conflict)
    return Verdict::undetermined("real-mode conflict, not a proof: " + red.conflict->to_string(), bits);
  if (red.partial.complete()) {
    std::vector<Real> b;
    for (auto& v : red.partial.value) b.push_back(*v);
    return verify_real(sys, target, b, c, bits, "determined by unique products and elimination");
  }
  auto nt = newton_complete(sys, red.partial.value, c, bits);
  if (!nt.solution) {
    Verdict v = Verdict::undetermined("numeric search did not converge after " + std::to_string(nt.starts) + " starts",
                                      bits);
    v.residual = nt.best_residual;
    return v;
  }
  return verify_real(sys, target, *nt.solution, c, bits, "numeric completion");
}

/// Real arithmetic at P bits, retried once at 2P.
inline Verdict solve_real(const QuadraticSystem<Real>& sys, const AtomicMeasure<Real>& target,
                          const NumericConfig& cfg, const SolveOptions& opt) {
  unsigned bits = cfg.precision_bits;
  Verdict v = solve_real_once(to_real(sys, bits), to_real(target, bits), cfg, opt, bits);
  if (v.outcome == Outcome::Witness) return v;
  Verdict w = solve_real_once(to_real(sys, 2 * bits), to_real(target, 2 * bits), cfg, opt, 2 * bits);
  return w;
}

}  // namespace detail

/// Decides the weights of nu on sys.support with nu * nu = target.
template <class W>
Verdict solve_weights(const QuadraticSystem<W>& sys, const AtomicMeasure<W>& target, const NumericConfig& cfg,
                      const SolveOptions& opt = {}) {
  if constexpr (!Field<W>::exact) {
    return detail::solve_real(sys, target, cfg, opt);
  } else {
    Reduction<W> red = propagate_ur(sys, cfg);
    if (!red.inexact && !red.conflict && opt.elimination) eliminate(sys, red, cfg);
    if (!red.inexact && !red.conflict)
      if (auto bad = check_assigned(sys, red.partial, cfg)) red.conflict = bad;
    if (red.conflict) return Verdict::impossible(*red.conflict);
    if (!red.inexact && red.partial.complete()) {
      std::vector<W> b;
      for (auto& v : red.partial.value) b.push_back(*v);
      auto nu = detail::measure_from(sys.support, b);
      if (!same_measure(convolve(nu, nu), target, cfg))
        return Verdict::undetermined("exact assignment failed the final convolution check");
      Verdict v;
      v.outcome = Outcome::Witness;
      v.witness = nu;
      v.residual = Real(cfg.precision_bits);
      v.note = "exact";
      return v;
    }
    Verdict v = detail::solve_real(to_real(sys, cfg.precision_bits), to_real(target, cfg.precision_bits), cfg, opt);
    if (red.inexact) v.note += " (continued in real arithmetic: an exact square root was unavailable)";
    return v;
  }
}

/// Whether mu * t mu has a nonnegative square root supported on supp(mu).
template <class W>
Verdict aluthge_subnormal(const AtomicMeasure<W>& mu, const NumericConfig& cfg = {}, const SolveOptions& opt = {}) {
  auto support = mu.support();
  if (opt.structural_rules)
    if (auto c = structural_certificate(pair_diagram(support))) return Verdict::impossible(*c);
  auto target = convolve(mu, t_weight(mu, cfg));
  auto built = build_system(target, support);
  if (auto* c = std::get_if<Certificate>(&built)) return Verdict::impossible(*c);
  return solve_weights(std::get<QuadraticSystem<W>>(built), target, cfg, opt);
}

/// Candidate supports for a square root of a measure on `lambda`:
/// x_1 = sqrt(lambda_1), x_j in {lambda_k / x_1}, x_q = sqrt(lambda_p),
/// pairwise products exactly covering the support. Increasing size, then
/// lexicographic in the chosen indices.
class SupportEnumerator {
 public:
  explicit SupportEnumerator(const std::vector<Position>& lambda) : lambda_(lambda) {
    p_ = lambda.size();
    auto x1 = lambda.front().sqrt();
    if (!x1) {
      irrational_base_ = true;
      return;
    }
    for (const auto& l : lambda) cand_.push_back(l / *x1);
    auto top = lambda.back().sqrt();
    if (top) {
      for (std::size_t k = 0; k < p_; ++k)
        if (cand_[k] == *top) top_ = k;
    }
  }

  bool irrational_base() const { return irrational_base_; }
  bool top_reachable() const { return top_.has_value(); }
  const std::vector<Position>& candidates() const { return cand_; }

  /// Calls f(support) for each admissible support until f returns false
  /// or `cap` supports were produced; returns false when capped.
  template <class F>
  bool for_each(std::size_t cap, F&& f) {
    if (irrational_base_ || !top_) return true;
    std::size_t qmin = 1;
    while (qmin * (qmin + 1) / 2 < p_) ++qmin;
    std::size_t qmax = (p_ + 1) / 2;
    produced_ = 0;
    stop_ = false;
    capped_ = false;
    for (std::size_t q = qmin; q <= qmax && !stop_; ++q) {
      std::vector<std::size_t> chosen;
      if (q == 1) {
        if (*top_ == 0) emit({0}, cap, f);
        continue;
      }
      if (*top_ < q - 1) continue;
      chosen = {0};
      extend(chosen, q, cap, f);
    }
    return !capped_;
  }

 private:
  template <class F>
  void emit(const std::vector<std::size_t>& idx, std::size_t cap, F& f) {
    std::vector<Position> xs;
    for (auto k : idx) xs.push_back(cand_[k]);
    // exact coverage of the support
    std::vector<bool> hit(p_, false);
    std::size_t count = 0;
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a; b < xs.size(); ++b) {
        auto at = std::lower_bound(lambda_.begin(), lambda_.end(), xs[a] * xs[b]);
        std::size_t k = static_cast<std::size_t>(at - lambda_.begin());
        if (!hit[k]) {
          hit[k] = true;
          ++count;
        }
      }
    if (count != p_) return;
    if (produced_ >= cap) {
      capped_ = stop_ = true;
      return;
    }
    ++produced_;
    if (!f(xs)) stop_ = true;
  }

  bool in_support(const Position& v) const { return std::binary_search(lambda_.begin(), lambda_.end(), v); }

  bool compatible(const std::vector<std::size_t>& chosen, std::size_t k) const {
    if (!in_support(cand_[k] * cand_[k])) return false;
    for (auto c : chosen)
      if (!in_support(cand_[c] * cand_[k])) return false;
    return true;
  }

  template <class F>
  void extend(std::vector<std::size_t>& chosen, std::size_t q, std::size_t cap, F& f) {
    if (stop_) return;
    std::size_t have = chosen.size();
    if (have == q) {
      emit(chosen, cap, f);
      return;
    }
    if (have == q - 1) {
      // last slot is the top candidate
      if (*top_ > chosen.back() && compatible(chosen, *top_)) {
        chosen.push_back(*top_);
        emit(chosen, cap, f);
        chosen.pop_back();
      }
      return;
    }
    if (have == 1) {
      // second slot is lambda_2 / x_1
      if (1 < *top_ && compatible(chosen, 1)) {
        chosen.push_back(1);
        extend(chosen, q, cap, f);
        chosen.pop_back();
      }
      return;
    }
    std::size_t slots_left = q - have;  // including the top slot
    for (std::size_t k = chosen.back() + 1; k + slots_left <= *top_ + 1 && k < *top_; ++k) {
      if (!compatible(chosen, k)) continue;
      chosen.push_back(k);
      extend(chosen, q, cap, f);
      chosen.pop_back();
      if (stop_) return;
    }
  }

  std::vector<Position> lambda_;
  std::vector<Position> cand_;
  std::size_t p_ = 0;
  std::optional<std::size_t> top_;
  bool irrational_base_ = false;
  std::size_t produced_ = 0;
  bool stop_ = false;
  bool capped_ = false;
};

/// Whether mu has a nonnegative square root under multiplicative convolution.
template <class W>
Verdict sqrt_of(const AtomicMeasure<W>& mu, const NumericConfig& cfg = {}, const SolveOptions& opt = {}) {
  auto lambda = mu.support();
  SupportEnumerator en(lambda);
  if (en.irrational_base())
    return Verdict::undetermined("sqrt(lambda_1) needs a fourth root; root positions are not representable");
  if (!en.top_reachable())
    return Verdict::impossible({Rule::SupportMismatch, {lambda.size()},
                                "largest atom is not the square of a candidate position"});
  std::size_t tried = 0, open = 0;
  std::optional<Verdict> found;
  std::string open_note;
  bool complete = en.for_each(cfg.max_candidates, [&](const std::vector<Position>& xs) {
    ++tried;
    auto built = build_system(mu, xs);
    if (std::holds_alternative<Certificate>(built)) return true;
    Verdict v = solve_weights(std::get<QuadraticSystem<W>>(built), mu, cfg, opt);
    if (v.outcome == Outcome::Witness) {
      found = std::move(v);
      return false;
    }
    if (v.outcome == Outcome::Undetermined) {
      ++open;
      if (open_note.empty()) open_note = v.note;
    }
    return true;
  });
  if (found) {
    found->candidates = tried;
    return *found;
  }
  if (!complete) {
    Verdict v = Verdict::undetermined("candidate cap " + std::to_string(cfg.max_candidates) + " reached");
    v.candidates = tried;
    return v;
  }
  if (open > 0) {
    Verdict v = Verdict::undetermined(std::to_string(open) + " of " + std::to_string(tried) +
                                      " candidate supports left open: " + open_note);
    v.candidates = tried;
    return v;
  }
  Verdict v = Verdict::impossible({Rule::CandidatesExhausted, {},
                                   std::to_string(tried) + " candidate supports, each refuted exactly"});
  v.candidates = tried;
  return v;
}

}  // namespace alsq
