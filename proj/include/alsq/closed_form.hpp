#pragma once

// Closed-form answers for 3 <= p <= 6 atoms.
//
// In each case mu * t mu has a root on supp(mu) exactly when mu itself has
// a square root rho, and then nu = rho * t rho. The witness returned here
// is rho, built from the explicit formulas and checked by convolution.

#include "alsq/measure.hpp"
#include "alsq/product_diagram.hpp"
#include "alsq/rules.hpp"
#include "alsq/verdict.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alsq {

enum class SmallCase {
  None,
  ThreeGeometric,
  FourAtoms,
  FiveGeometric,
  SixSquaresThroughFourth,  // (lambda_2^2, lambda_5^2) = (lambda_1 lambda_4, lambda_4 lambda_6)
  SixSquaresThroughThird,   // (lambda_2^2, lambda_5^2) = (lambda_1 lambda_3, lambda_3 lambda_6)
  SixOther,
};

inline const char* to_string(SmallCase c) {
  switch (c) {
    case SmallCase::None: return "none";
    case SmallCase::ThreeGeometric: return "three-geometric";
    case SmallCase::FourAtoms: return "four-atoms";
    case SmallCase::FiveGeometric: return "five-geometric";
    case SmallCase::SixSquaresThroughFourth: return "six-squares-through-fourth";
    case SmallCase::SixSquaresThroughThird: return "six-squares-through-third";
    case SmallCase::SixOther: return "six-other";
  }
  return "none";
}

struct SmallVerdict {
  Verdict verdict;
  SmallCase which = SmallCase::None;
};

namespace detail {

template <class W>
class SmallCaseBuilder {
 public:
  SmallCaseBuilder(const AtomicMeasure<W>& mu, const NumericConfig& cfg) : mu_(mu), cfg_(cfg) {}

  const W& a(std::size_t i) const { return mu_.weight(i - 1); }
  const Position& l(std::size_t i) const { return mu_.position(i - 1); }
  bool eq(const W& x, const W& y) const { return Field<W>::equal(x, y, cfg_); }
  W four(const W& x, const W& y) const {
    W t = x * y;
    t += t;
    t += t;
    return t;
  }

  /// Square root rho = sum w_k delta_{x_k}, given the squares of the
  /// weights (or the weights themselves) and positions x_k = lambda_{j_k}/x_1.
  Verdict witness(const std::vector<std::size_t>& at, const std::vector<W>& weight_squares,
                  const std::vector<std::optional<W>>& direct) const {
    Verdict v;
    v.outcome = Outcome::Witness;
    auto x1 = l(1).sqrt();
    if (!x1) {
      v.note = "closed-form conditions hold; root positions need a fourth root and are omitted";
      return v;
    }
    std::vector<Position> xs;
    for (auto j : at) xs.push_back(l(j) / *x1);
    std::vector<W> ws;
    bool exact = true;
    for (std::size_t k = 0; k < at.size(); ++k) {
      if (direct[k]) {
        ws.push_back(*direct[k]);
        continue;
      }
      auto r = Field<W>::sqrt(weight_squares[k], cfg_);
      if (!r) {
        exact = false;
        break;
      }
      ws.push_back(*r);
    }
    if (exact) {
      std::vector<Atom<W>> atoms;
      for (std::size_t k = 0; k < xs.size(); ++k) atoms.push_back({xs[k], ws[k]});
      auto rho = AtomicMeasure<W>::unchecked(std::move(atoms));
      if (!same_measure(convolve(rho, rho), mu_, cfg_))
        return Verdict::undetermined("closed-form witness failed the convolution check");
      v.witness = rho;
      v.residual = Real(cfg_.precision_bits);
      v.note = "closed form";
      return v;
    }
    // weights outside the exact field: evaluate the same formulas in real arithmetic
    unsigned bits = cfg_.precision_bits;
    std::vector<Atom<Real>> atoms;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Real w = direct[k] ? Field<W>::to_real(*direct[k], bits) : sqrt(Field<W>::to_real(weight_squares[k], bits));
      atoms.push_back({xs[k], w});
    }
    auto rho = AtomicMeasure<Real>::unchecked(std::move(atoms));
    auto err = max_relative_error(convolve(rho, rho), to_real_any(), bits);
    if (!err || !(*err < cfg_.tol(bits)))
      return Verdict::undetermined("closed-form witness failed the convolution check", bits);
    v.witness = rho;
    v.residual = *err;
    v.precision_bits = bits;
    v.note = "closed form, real weights";
    return v;
  }

  AtomicMeasure<Real> to_real_any() const { return to_real(mu_, cfg_.precision_bits); }

  Verdict fail(Rule r, std::vector<std::size_t> idx, std::string why) const {
    return Verdict::impossible({r, std::move(idx), std::move(why)});
  }

 private:
  const AtomicMeasure<W>& mu_;
  const NumericConfig& cfg_;
};

}  // namespace detail

/// Published conditions for 3 <= p <= 6.
template <class W>
SmallVerdict classify_small(const AtomicMeasure<W>& mu, const NumericConfig& cfg = {}) {
  std::size_t p = mu.size();
  if (p < 3 || p > 6)
    throw std::invalid_argument("closed forms cover 3 <= p <= 6 atoms; use the generic solver for p = " +
                                std::to_string(p));
  detail::SmallCaseBuilder<W> B(mu, cfg);
  auto d = pair_diagram(mu.support());
  auto S = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t m) {
    return d.same(i - 1, j - 1, k - 1, m - 1);
  };
  bool geometric = geometric_profile(mu.support()).has_value();

  if (p == 3) {
    if (!geometric)
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3}, "support is not geometric"), SmallCase::None};
    if (!B.eq(B.a(2) * B.a(2), B.four(B.a(1), B.a(3))))
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3}, "a_2^2 != 4 a_1 a_3"), SmallCase::ThreeGeometric};
    return {B.witness({1, 2}, {B.a(1), B.a(3)}, {std::nullopt, std::nullopt}), SmallCase::ThreeGeometric};
  }

  if (p == 4)
    return {B.fail(Rule::FourAtomClosedForm, {}, "no four-atom measure qualifies"), SmallCase::FourAtoms};

  if (p == 5) {
    if (!geometric)
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3, 4, 5}, "support is not geometric"), SmallCase::None};
    if (!B.eq(B.a(2) * B.a(2) * B.a(5), B.a(4) * B.a(4) * B.a(1)))
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 4, 5}, "a_2^2 a_5 != a_4^2 a_1"), SmallCase::FiveGeometric};
    // a_3 = a_2^2 / (4 a_1) + 2 sqrt(a_1 a_5), compared after squaring
    W x = B.a(3) - (B.a(2) * B.a(2)) / B.four(B.a(1), Field<W>::from_rational(Rational(1), cfg));
    if (!Field<W>::positive(x, cfg) || !B.eq(x * x, B.four(B.a(1), B.a(5))))
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3, 5}, "a_3 != a_2^2/(4 a_1) + 2 sqrt(a_1 a_5)"),
              SmallCase::FiveGeometric};
    std::optional<W> middle;
    auto r1 = Field<W>::sqrt(B.a(1), cfg);
    if (r1) {
      W two_r1 = *r1 + *r1;
      middle = W(B.a(2) / two_r1);
    } else {
      middle = std::nullopt;
    }
    W middle_sq = (B.a(2) * B.a(2)) / B.four(B.a(1), Field<W>::from_rational(Rational(1), cfg));
    return {B.witness({1, 2, 3}, {B.a(1), middle_sq, B.a(5)}, {std::nullopt, middle, std::nullopt}),
            SmallCase::FiveGeometric};
  }

  // p == 6
  if (S(2, 2, 1, 5) || S(5, 5, 2, 6))
    return {B.fail(Rule::SixAtomSquareHitsFifth, {1, 2, 5, 6}, "lambda_2^2 = lambda_1 lambda_5 or lambda_5^2 = lambda_2 lambda_6"),
            SmallCase::SixOther};
  if (S(2, 2, 1, 6) || S(5, 5, 1, 6))
    return {B.fail(Rule::SecondSquareHitsExtremes, {1, 2, 5, 6}, "a second square equals lambda_1 lambda_6"),
            SmallCase::SixOther};
  bool A = S(2, 2, 1, 4), Bq = S(2, 2, 1, 3), C = S(5, 5, 4, 6), D = S(5, 5, 3, 6);
  if (A && C) {
    if (!S(3, 3, 1, 6))
      return {B.fail(Rule::SmallCaseConditions, {1, 3, 6}, "lambda_3^2 != lambda_1 lambda_6"),
              SmallCase::SixSquaresThroughFourth};
    if (!B.eq(B.a(2) * B.a(2), B.four(B.a(1), B.a(4))) || !B.eq(B.a(3) * B.a(3), B.four(B.a(1), B.a(6))) ||
        !B.eq(B.a(5) * B.a(5), B.four(B.a(4), B.a(6))))
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3, 4, 5, 6},
                     "(a_2^2, a_3^2, a_5^2) != (4 a_1 a_4, 4 a_1 a_6, 4 a_4 a_6)"),
              SmallCase::SixSquaresThroughFourth};
    return {B.witness({1, 2, 3}, {B.a(1), B.a(4), B.a(6)}, {std::nullopt, std::nullopt, std::nullopt}),
            SmallCase::SixSquaresThroughFourth};
  }
  if (Bq && D) {
    if (!S(4, 4, 1, 6))
      return {B.fail(Rule::SmallCaseConditions, {1, 4, 6}, "lambda_4^2 != lambda_1 lambda_6"),
              SmallCase::SixSquaresThroughThird};
    if (!B.eq(B.a(2) * B.a(2), B.four(B.a(1), B.a(3))) || !B.eq(B.a(4) * B.a(4), B.four(B.a(1), B.a(6))) ||
        !B.eq(B.a(5) * B.a(5), B.four(B.a(3), B.a(6))))
      return {B.fail(Rule::SmallCaseConditions, {1, 2, 3, 4, 5, 6},
                     "(a_2^2, a_4^2, a_5^2) != (4 a_1 a_3, 4 a_1 a_6, 4 a_3 a_6)"),
              SmallCase::SixSquaresThroughThird};
    return {B.witness({1, 2, 4}, {B.a(1), B.a(3), B.a(6)}, {std::nullopt, std::nullopt, std::nullopt}),
            SmallCase::SixSquaresThroughThird};
  }
  if (A && D)
    return {B.fail(Rule::SixAtomSplitSquares, {1, 2, 3, 4, 5, 6},
                   "lambda_2^2 = lambda_1 lambda_4 and lambda_5^2 = lambda_3 lambda_6"),
            SmallCase::SixOther};
  if (Bq && C)
    return {B.fail(Rule::SixAtomCrossedSquares, {1, 2, 3, 4, 5, 6},
                   "case (lambda_2^2, lambda_5^2) = (lambda_1 lambda_3, lambda_4 lambda_6)"),
            SmallCase::SixOther};
  // lambda_2^2 or lambda_5^2 uniquely represented
  std::size_t j = d.unique(1, 1) ? 2 : 5;
  return {B.fail(Rule::BoundaryProductsShared, {j, j}, "lambda_" + std::to_string(j) + "^2 is uniquely represented"),
          SmallCase::SixOther};
}

}  // namespace alsq
