#pragma once

// Necessary combinatorial conditions for a nonnegative nu with
// nu * nu = mu * t mu and supp(nu) = supp(mu).
//
// Every condition reads only the product diagram of supp(mu): which
// products coincide and which are uniquely represented. A violated
// condition is a certificate that no such nu exists.

#include "alsq/certificate.hpp"
#include "alsq/product_diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alsq {

enum class RuleScan { First, Exhaustive };

namespace detail {

class RuleRunner {
 public:
  RuleRunner(const ProductDiagram& d, RuleScan scan) : d_(d), p_(d.atoms()), scan_(scan) {}

  std::vector<Certificate> run() {
    if (p_ < 2) return {};
    // cheapest first
    if (boundary_products() || cardinality() || second_square_hits_extremes() ||
        crossed_near_extreme_squares() || endpoint_shared_unique() || interior_column_unique() ||
        unique_square_pair() || unique_triangle() || unique_four_cycle() || unique_diagonal_chain() ||
        six_atom_rules())
      return found_;
    return found_;
  }

 private:
  using Idx = std::size_t;

  bool U(Idx i, Idx j) const { return d_.unique(i, j); }
  bool S(Idx i, Idx j, Idx k, Idx l) const { return d_.same(i, j, k, l); }

  // returns true when scanning should stop
  bool report(Rule r, std::vector<Idx> zero_based, std::string detail = {}) {
    for (auto& i : zero_based) ++i;
    found_.push_back({r, std::move(zero_based), std::move(detail)});
    return scan_ == RuleScan::First;
  }

  std::string prod(Idx i, Idx j) const {
    return "lambda_" + std::to_string(i + 1) + "*lambda_" + std::to_string(j + 1);
  }

  bool boundary_products() {
    if (p_ < 3) return false;
    std::vector<std::pair<Idx, Idx>> must_share;
    if (p_ == 3)
      must_share = {{1, 1}, {0, 2}};
    else
      must_share = {{1, 1}, {p_ - 2, p_ - 2}, {0, p_ - 1}, {0, p_ - 2}, {1, p_ - 1}};
    for (auto [i, j] : must_share)
      if (U(i, j) && report(Rule::BoundaryProductsShared, {i, j}, prod(i, j) + " is uniquely represented"))
        return true;
    return false;
  }

  bool cardinality() {
    auto c = cardinality_check(d_);
    if (!c.violated) return false;
    std::string detail = "card " + std::to_string(c.card) + " outside [" + std::to_string(c.lower) + ", " +
                         (c.upper ? std::to_string(*c.upper) : std::string("-")) + "]";
    return report(Rule::CardinalityBound, {}, detail);
  }

  bool second_square_hits_extremes() {
    if (p_ < 4) return false;
    Idx last = p_ - 1;
    if (S(1, 1, 0, last) && report(Rule::SecondSquareHitsExtremes, {1, 1, 0, last}, "lambda_2^2 = lambda_1*lambda_p"))
      return true;
    if (S(last - 1, last - 1, 0, last) &&
        report(Rule::SecondSquareHitsExtremes, {last - 1, last - 1, 0, last}, "lambda_{p-1}^2 = lambda_1*lambda_p"))
      return true;
    return false;
  }

  bool crossed_near_extreme_squares() {
    if (p_ < 5) return false;
    Idx last = p_ - 1;
    if (S(1, 1, 0, last - 1) && S(last - 1, last - 1, 1, last))
      return report(Rule::CrossedNearExtremeSquares, {0, 1, last - 1, last},
                    "lambda_2^2 = lambda_1*lambda_{p-1} and lambda_{p-1}^2 = lambda_2*lambda_p");
    return false;
  }

  bool endpoint_shared_unique() {
    if (p_ < 3) return false;
    Idx last = p_ - 1;
    std::vector<Idx> ks;
    for (Idx k = 1; k < last; ++k)
      if (U(0, k) && U(last, k)) ks.push_back(k);
    if (ks.size() >= 2)
      return report(Rule::EndpointSharedUnique, {ks[0], ks[1]},
                    "two atoms with both outer products unique");
    if (ks.size() == 1 && !S(ks[0], ks[0], 0, last))
      return report(Rule::EndpointSharedUnique, {ks[0]},
                    "outer products unique but lambda_k^2 != lambda_1*lambda_p");
    return false;
  }

  // Only the pairs containing the outer product lambda_e lambda_k are
  // forced to share; lambda_2 lambda_k and lambda_k^2 may both be unique.
  bool interior_column_unique() {
    if (p_ < 5) return false;
    Idx last = p_ - 1;
    for (Idx k = 2; k + 2 <= last; ++k)
      for (auto [e, n] : {std::pair<Idx, Idx>{0, 1}, std::pair<Idx, Idx>{last, last - 1}}) {
        if (!U(e, k)) continue;
        if (U(n, k) && report(Rule::InteriorColumnUnique, {e, k, n, k}, "outer and neighbour column products unique"))
          return true;
        if (U(k, k) && report(Rule::InteriorColumnUnique, {e, k, k, k}, "outer column product and square unique"))
          return true;
      }
    return false;
  }

  bool unique_square_pair() {
    for (Idx i = 0; i < p_; ++i)
      for (Idx j = i + 1; j < p_; ++j)
        if (U(i, i) && U(i, j) && U(j, j) && report(Rule::UniqueSquarePair, {i, j}))
          return true;
    return false;
  }

  bool unique_triangle() {
    for (Idx i = 0; i < p_; ++i) {
      if (!U(i, i)) continue;
      for (Idx j = 0; j < p_; ++j) {
        if (j == i || !U(i, j)) continue;
        for (Idx k = j + 1; k < p_; ++k) {
          if (k == i) continue;
          if (U(j, k) && U(i, k) && report(Rule::UniqueTriangle, {i, j, k})) return true;
        }
      }
    }
    return false;
  }

  bool unique_four_cycle() {
    // products i-j, j-k, k-l, l-i with i != k and j != l
    for (Idx i = 0; i < p_; ++i)
      for (Idx k = i + 1; k < p_; ++k)
        for (Idx j = 0; j < p_; ++j) {
          if (!U(i, j) || !U(j, k)) continue;
          for (Idx l = j + 1; l < p_; ++l)
            if (U(k, l) && U(l, i) && report(Rule::UniqueFourCycle, {i, j, k, l})) return true;
        }
    return false;
  }

  bool unique_diagonal_chain() {
    for (Idx i = 0; i < p_; ++i) {
      if (!U(i, i)) continue;
      for (Idx k = i + 1; k < p_; ++k) {
        if (!U(k, k)) continue;
        for (Idx j = 0; j < p_; ++j)
          if (U(i, j) && U(j, k) && !S(j, j, i, k) &&
              report(Rule::UniqueDiagonalChain, {i, j, k}, "lambda_j^2 != lambda_i*lambda_k"))
            return true;
      }
    }
    return false;
  }

  bool six_atom_rules() {
    if (p_ != 6) return false;
    if (S(1, 1, 0, 4) && report(Rule::SixAtomSquareHitsFifth, {1, 1, 0, 4}, "lambda_2^2 = lambda_1*lambda_5"))
      return true;
    if (S(4, 4, 1, 5) && report(Rule::SixAtomSquareHitsFifth, {4, 4, 1, 5}, "lambda_5^2 = lambda_2*lambda_6"))
      return true;
    if (S(1, 1, 0, 3) && S(4, 4, 2, 5) &&
        report(Rule::SixAtomSplitSquares, {1, 1, 0, 3, 4, 4, 2, 5},
               "lambda_2^2 = lambda_1*lambda_4 and lambda_5^2 = lambda_3*lambda_6"))
      return true;
    if (S(1, 1, 0, 2) && S(4, 4, 3, 5) &&
        report(Rule::SixAtomCrossedSquares, {1, 1, 0, 2, 4, 4, 3, 5},
               "case (lambda_2^2, lambda_5^2) = (lambda_1*lambda_3, lambda_4*lambda_6)"))
      return true;
    return false;
  }

  const ProductDiagram& d_;
  std::size_t p_;
  RuleScan scan_;
  std::vector<Certificate> found_;
};

}  // namespace detail

/// First violated condition in a fixed order, or none.
inline std::optional<Certificate> structural_certificate(const ProductDiagram& d) {
  auto all = detail::RuleRunner(d, RuleScan::First).run();
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline std::optional<Certificate> structural_certificate(const std::vector<Position>& support) {
  return structural_certificate(pair_diagram(support));
}

/// Every violated condition, in scan order.
inline std::vector<Certificate> structural_violations(const ProductDiagram& d) {
  return detail::RuleRunner(d, RuleScan::Exhaustive).run();
}

/// Re-evaluates the hypothesis of a structural certificate on a diagram.
inline bool recheck(const Certificate& c, const ProductDiagram& d) {
  std::size_t p = d.atoms();
  std::vector<std::size_t> x;
  for (auto i : c.indices) {
    if (i < 1 || i > p) return false;
    x.push_back(i - 1);
  }
  auto U = [&](std::size_t i, std::size_t j) { return d.unique(i, j); };
  auto S = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return d.same(i, j, k, l); };
  std::size_t last = p - 1;
  switch (c.rule) {
    case Rule::BoundaryProductsShared:
      return x.size() == 2 && U(x[0], x[1]);
    case Rule::CardinalityBound:
      return cardinality_check(d).violated;
    case Rule::SecondSquareHitsExtremes:
      return p >= 4 && x.size() == 4 && x[0] == x[1] && (x[0] == 1 || x[0] == last - 1) && x[2] == 0 &&
             x[3] == last && S(x[0], x[1], x[2], x[3]);
    case Rule::CrossedNearExtremeSquares:
      return p >= 5 && S(1, 1, 0, last - 1) && S(last - 1, last - 1, 1, last);
    case Rule::EndpointSharedUnique:
      if (x.size() == 2) return x[0] != x[1] && U(0, x[0]) && U(last, x[0]) && U(0, x[1]) && U(last, x[1]);
      return x.size() == 1 && U(0, x[0]) && U(last, x[0]) && !S(x[0], x[0], 0, last);
    case Rule::InteriorColumnUnique:
      return x.size() == 4 && p >= 5 && (x[0] == 0 || x[0] == last) && x[1] == x[3] && x[1] >= 2 &&
             x[1] + 2 <= last && (x[2] == x[1] || x[2] == (x[0] == 0 ? 1 : last - 1)) && U(x[0], x[1]) &&
             U(x[2], x[3]);
    case Rule::UniqueSquarePair:
      return x.size() == 2 && x[0] != x[1] && U(x[0], x[0]) && U(x[0], x[1]) && U(x[1], x[1]);
    case Rule::UniqueTriangle:
      return x.size() == 3 && x[0] != x[1] && x[0] != x[2] && U(x[0], x[0]) && U(x[0], x[1]) &&
             U(x[1], x[2]) && U(x[0], x[2]);
    case Rule::UniqueFourCycle:
      return x.size() == 4 && x[0] != x[2] && x[1] != x[3] && U(x[0], x[1]) && U(x[1], x[2]) &&
             U(x[2], x[3]) && U(x[3], x[0]);
    case Rule::UniqueDiagonalChain:
      return x.size() == 3 && x[0] != x[2] && U(x[0], x[0]) && U(x[0], x[1]) && U(x[1], x[2]) &&
             U(x[2], x[2]) && !S(x[1], x[1], x[0], x[2]);
    case Rule::SixAtomSquareHitsFifth:
      return p == 6 && (S(1, 1, 0, 4) || S(4, 4, 1, 5));
    case Rule::SixAtomSplitSquares:
      return p == 6 && S(1, 1, 0, 3) && S(4, 4, 2, 5);
    case Rule::SixAtomCrossedSquares:
      return p == 6 && S(1, 1, 0, 2) && S(4, 4, 3, 5);
    default:
      return false;
  }
}

}  // namespace alsq
