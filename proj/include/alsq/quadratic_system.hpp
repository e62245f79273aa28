#pragma once

// Coefficient matching for nu * nu = target with nu supported on a given
// set x_1 < ... < x_q: one equation per target atom,
//
//     sum over pairs {i,j} with x_i x_j = s of (2 - delta_ij) b_i b_j = m(s).

#include "alsq/certificate.hpp"
#include "alsq/measure.hpp"
#include "alsq/numeric/field.hpp"
#include "alsq/product_diagram.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace alsq {

template <class W>
struct Equation {
  Position value;
  std::vector<IndexPair> pairs;
  W rhs;
};

template <class W>
struct QuadraticSystem {
  std::vector<Position> support;
  std::vector<Equation<W>> equations;
  ProductDiagram diagram;

  std::size_t unknowns() const { return support.size(); }
};

template <class W>
std::variant<QuadraticSystem<W>, Certificate> build_system(const AtomicMeasure<W>& target,
                                                           const std::vector<Position>& support) {
  QuadraticSystem<W> sys;
  sys.support = support;
  sys.diagram = pair_diagram(support);
  std::vector<bool> covered(target.size(), false);
  for (const auto& e : sys.diagram.entries()) {
    auto at = target.find(e.value);
    if (!at) {
      const auto& pr = e.pairs.front();
      return Certificate{Rule::SupportMismatch, {pr.i + 1, pr.j + 1},
                         "product " + e.value.to_string() + " is not an atom of the target"};
    }
    covered[*at] = true;
    sys.equations.push_back({e.value, e.pairs, target.weight(*at)});
  }
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (!covered[k])
      return Certificate{Rule::SupportMismatch, {},
                         "target atom " + target.position(k).to_string() + " is not a product of the support"};
  return sys;
}

enum class Provenance { Unknown, UniqueSquare, UniqueEdge, Elimination, Numeric };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Unknown: return "unknown";
    case Provenance::UniqueSquare: return "unique-square";
    case Provenance::UniqueEdge: return "unique-edge";
    case Provenance::Elimination: return "elimination";
    case Provenance::Numeric: return "numeric";
  }
  return "unknown";
}

template <class W>
struct PartialAssignment {
  std::vector<std::optional<W>> value;
  std::vector<Provenance> how;
  std::vector<std::size_t> source;  // equation that produced the value

  explicit PartialAssignment(std::size_t q = 0)
      : value(q), how(q, Provenance::Unknown), source(q, 0) {}

  std::size_t size() const { return value.size(); }
  bool known(std::size_t i) const { return value[i].has_value(); }
  std::size_t assigned() const {
    std::size_t n = 0;
    for (const auto& v : value) n += v.has_value();
    return n;
  }
  bool complete() const { return assigned() == value.size(); }
};

/// Outcome of the exact stages. `inexact` means a square root left the
/// scalar field and the caller should continue in real arithmetic.
template <class W>
struct Reduction {
  PartialAssignment<W> partial;
  std::optional<Certificate> conflict;
  bool inexact = false;
};

namespace detail {

template <class W>
bool assign(Reduction<W>& r, const QuadraticSystem<W>& sys, std::size_t i, W v, Provenance how,
            std::size_t eq, const NumericConfig& cfg) {
  auto& part = r.partial;
  if (!Field<W>::positive(v, cfg)) {
    const auto& pr = sys.equations[eq].pairs.front();
    r.conflict = Certificate{Rule::NonPositiveWeight, {pr.i + 1, pr.j + 1},
                             "equation at " + sys.equations[eq].value.to_string() + " forces b_" +
                                 std::to_string(i + 1) + " <= 0"};
    return false;
  }
  if (part.known(i)) {
    if (!Field<W>::equal(*part.value[i], v, cfg)) {
      r.conflict = Certificate{Rule::PropagationConflict, {i + 1},
                               "b_" + std::to_string(i + 1) + " derived from products " +
                                   sys.equations[part.source[i]].value.to_string() + " and " +
                                   sys.equations[eq].value.to_string() + " disagree"};
      return false;
    }
    return true;
  }
  part.value[i] = std::move(v);
  part.how[i] = how;
  part.source[i] = eq;
  return true;
}

}  // namespace detail

/// Values forced by uniquely represented products, to a fixpoint:
/// b_i = sqrt(m(x_i^2)) and b_j = m(x_i x_j) / (2 b_i).
template <class W>
Reduction<W> propagate_ur(const QuadraticSystem<W>& sys, const NumericConfig& cfg) {
  Reduction<W> r{PartialAssignment<W>(sys.unknowns()), std::nullopt, false};
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const auto& eq = sys.equations[e];
    if (eq.pairs.size() != 1 || !eq.pairs[0].diagonal()) continue;
    auto root = Field<W>::sqrt(eq.rhs, cfg);
    if (!root) {
      r.inexact = true;
      return r;
    }
    if (!detail::assign(r, sys, eq.pairs[0].i, std::move(*root), Provenance::UniqueSquare, e, cfg)) return r;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
      const auto& eq = sys.equations[e];
      if (eq.pairs.size() != 1 || eq.pairs[0].diagonal()) continue;
      std::size_t i = eq.pairs[0].i, j = eq.pairs[0].j;
      bool ki = r.partial.known(i), kj = r.partial.known(j);
      if (ki == kj) {
        if (ki) {
          W lhs = W(*r.partial.value[i] * *r.partial.value[j]);
          lhs += lhs;
          if (!Field<W>::equal(lhs, eq.rhs, cfg)) {
            r.conflict = Certificate{Rule::PropagationConflict, {i + 1, j + 1},
                                     "unique product " + eq.value.to_string() + " disagrees with b_" +
                                         std::to_string(i + 1) + " and b_" + std::to_string(j + 1)};
            return r;
          }
        }
        continue;
      }
      std::size_t from = ki ? i : j, to = ki ? j : i;
      W two_b = *r.partial.value[from] + *r.partial.value[from];
      if (!detail::assign(r, sys, to, W(eq.rhs / two_b), Provenance::UniqueEdge, e, cfg)) return r;
      changed = true;
    }
  }
  return r;
}

/// Solves equations with a single unknown left, to a fixpoint. Such an
/// equation reads b^2 [if the diagonal pair is present] + L b + K = m with
/// L, K from known values; it has a unique positive root iff m - K > 0.
template <class W>
void eliminate(const QuadraticSystem<W>& sys, Reduction<W>& r, const NumericConfig& cfg) {
  auto& part = r.partial;
  for (bool changed = true; changed && !r.conflict && !r.inexact;) {
    changed = false;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
      const auto& eq = sys.equations[e];
      std::optional<std::size_t> unknown;
      bool several = false;
      for (const auto& pr : eq.pairs) {
        for (std::size_t idx : {pr.i, pr.j}) {
          if (part.known(idx)) continue;
          if (unknown && *unknown != idx) several = true;
          unknown = idx;
        }
      }
      if (!unknown || several) continue;
      std::size_t u = *unknown;
      std::optional<W> K, L;
      bool square = false;
      for (const auto& pr : eq.pairs) {
        if (pr.i == u && pr.j == u) {
          square = true;
        } else if (pr.i == u || pr.j == u) {
          std::size_t other = pr.i == u ? pr.j : pr.i;
          W c = *part.value[other] + *part.value[other];
          L = L ? W(*L + c) : c;
        } else {
          W c = *part.value[pr.i] * *part.value[pr.j];
          if (!pr.diagonal()) c += c;
          K = K ? W(*K + c) : c;
        }
      }
      W rest = K ? W(eq.rhs - *K) : eq.rhs;
      if (Field<W>::sign(rest) <= 0 || (!Field<W>::exact && !Field<W>::positive(rest, cfg))) {
        r.conflict = Certificate{Rule::NonPositiveWeight, {u + 1},
                                 "equation at " + eq.value.to_string() + " leaves no positive value for b_" +
                                     std::to_string(u + 1)};
        return;
      }
      W b;
      if (!square) {
        b = rest / *L;
      } else if (!L) {
        auto root = Field<W>::sqrt(rest, cfg);
        if (!root) {
          r.inexact = true;
          return;
        }
        b = *root;
      } else {
        // b = (-L + sqrt(L^2 + 4 rest)) / 2
        W disc = *L * *L;
        W four_rest = rest + rest;
        four_rest += four_rest;
        disc += four_rest;
        auto root = Field<W>::sqrt(disc, cfg);
        if (!root) {
          r.inexact = true;
          return;
        }
        b = (*root - *L) / (Field<W>::from_rational(Rational(2), cfg));
      }
      if (!detail::assign(r, sys, u, std::move(b), Provenance::Elimination, e, cfg)) return;
      changed = true;
    }
  }
}

/// Residual of one equation under a full assignment.
template <class W>
W equation_lhs(const Equation<W>& eq, const std::vector<W>& b) {
  std::optional<W> lhs;
  for (const auto& pr : eq.pairs) {
    W c = b[pr.i] * b[pr.j];
    if (!pr.diagonal()) c += c;
    lhs = lhs ? W(*lhs + c) : c;
  }
  return *lhs;
}

/// First equation whose unknowns are all assigned but which fails.
template <class W>
std::optional<Certificate> check_assigned(const QuadraticSystem<W>& sys, const PartialAssignment<W>& part,
                                          const NumericConfig& cfg) {
  for (const auto& eq : sys.equations) {
    bool all = true;
    for (const auto& pr : eq.pairs) all = all && part.known(pr.i) && part.known(pr.j);
    if (!all) continue;
    std::vector<W> b;
    for (std::size_t i = 0; i < part.size(); ++i)
      b.push_back(part.known(i) ? *part.value[i] : eq.rhs);
    W lhs = equation_lhs(eq, b);
    if (!Field<W>::equal(lhs, eq.rhs, cfg)) {
      std::vector<std::size_t> idx;
      for (const auto& pr : eq.pairs) {
        idx.push_back(pr.i + 1);
        idx.push_back(pr.j + 1);
      }
      return Certificate{Rule::EquationViolated, idx,
                         "coefficient of " + eq.value.to_string() + ": " + Field<W>::to_string(lhs) +
                             " != " + Field<W>::to_string(eq.rhs)};
    }
  }
  return std::nullopt;
}

inline QuadraticSystem<Real> to_real(const QuadraticSystem<Surd>& sys, unsigned bits) {
  QuadraticSystem<Real> out;
  out.support = sys.support;
  out.diagram = sys.diagram;
  for (const auto& eq : sys.equations) out.equations.push_back({eq.value, eq.pairs, eq.rhs.to_real(bits)});
  return out;
}

inline QuadraticSystem<Real> to_real(const QuadraticSystem<Real>& sys, unsigned bits) {
  QuadraticSystem<Real> out;
  out.support = sys.support;
  out.diagram = sys.diagram;
  for (const auto& eq : sys.equations) out.equations.push_back({eq.value, eq.pairs, eq.rhs.with_precision(bits)});
  return out;
}

}  // namespace alsq
