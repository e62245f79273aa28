#pragma once

// Multi-start damped Gauss-Newton on the relative residuals
// r_e = lhs_e(b) / m_e - 1 over the still-unknown weights.

#include "alsq/numeric/field.hpp"
#include "alsq/numeric/real.hpp"
#include "alsq/quadratic_system.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace alsq {

struct NewtonOutcome {
  std::optional<std::vector<Real>> solution;
  Real best_residual;  // max |r_e| of the best iterate seen
  std::size_t starts = 0;
};

namespace detail {

/// Solves A x = y in place by Gaussian elimination with partial pivoting.
inline bool solve_dense(std::vector<std::vector<Real>>& A, std::vector<Real>& y) {
  std::size_t n = y.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    if (A[piv][c].is_zero()) return false;
    std::swap(A[piv], A[c]);
    std::swap(y[piv], y[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      Real f = A[r][c] / A[c][c];
      if (f.is_zero()) continue;
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      y[r] -= f * y[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t k = c + 1; k < n; ++k) y[c] -= A[c][k] * y[k];
    y[c] /= A[c][c];
  }
  return true;
}

struct ResidualEval {
  std::vector<Real> r;
  Real sum_sq;
  Real max_abs;
};

inline ResidualEval residuals(const QuadraticSystem<Real>& sys, const std::vector<Real>& b, unsigned bits) {
  ResidualEval out{{}, Real(bits), Real(bits)};
  Real one(1, bits);
  for (const auto& eq : sys.equations) {
    Real ri = equation_lhs(eq, b) / eq.rhs - one;
    out.sum_sq += ri * ri;
    out.max_abs = max(out.max_abs, abs(ri));
    out.r.push_back(std::move(ri));
  }
  return out;
}

}  // namespace detail

/// Completes a partial assignment numerically at `bits` precision.
inline NewtonOutcome newton_complete(const QuadraticSystem<Real>& sys, const std::vector<std::optional<Real>>& known,
                                     const NumericConfig& cfg, unsigned bits) {
  std::size_t q = sys.unknowns();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < q; ++i)
    if (!known[i]) free.push_back(i);
  NewtonOutcome out{std::nullopt, Real::pow2(60, bits), 0};
  if (free.empty()) return out;

  Real eps = cfg.tol(bits);
  Real eps2 = eps * eps;
  Real min_m = sys.equations.front().rhs, max_m = min_m;
  for (const auto& eq : sys.equations) {
    min_m = min(min_m, eq.rhs);
    max_m = max(max_m, eq.rhs);
  }
  double lo = log(sqrt(min_m) / Real(static_cast<long>(q), bits)).to_double();
  double hi = log(sqrt(max_m)).to_double();
  if (!(hi > lo)) hi = lo + 1.0;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> pick(lo, hi);

  std::vector<Real> b(q, Real(bits));
  for (std::size_t i = 0; i < q; ++i)
    if (known[i]) b[i] = known[i]->with_precision(bits);

  for (std::size_t start = 0; start < cfg.newton_starts; ++start) {
    ++out.starts;
    for (std::size_t u : free) b[u] = exp(Real::from_double(pick(rng), bits));
    auto cur = detail::residuals(sys, b, bits);
    for (std::size_t it = 0; it < cfg.newton_iterations && cur.max_abs >= eps2; ++it) {
      // Jacobian of r over the free unknowns
      std::size_t n = free.size();
      std::vector<std::vector<Real>> JtJ(n, std::vector<Real>(n, Real(bits)));
      std::vector<Real> g(n, Real(bits));
      for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        const auto& eq = sys.equations[e];
        std::vector<Real> row(n, Real(bits));
        bool any = false;
        for (std::size_t c = 0; c < n; ++c) {
          std::size_t u = free[c];
          for (const auto& pr : eq.pairs) {
            if (pr.i != u && pr.j != u) continue;
            Real other = pr.i == u ? b[pr.j] : b[pr.i];
            row[c] += other + other;  // d(b_u^2) = 2 b_u, d(2 b_u b_v) = 2 b_v
            any = true;
          }
          row[c] /= eq.rhs;
        }
        if (!any) continue;
        for (std::size_t a = 0; a < n; ++a) {
          g[a] += row[a] * cur.r[e];
          for (std::size_t c = 0; c < n; ++c) JtJ[a][c] += row[a] * row[c];
        }
      }
      std::vector<Real> step = g;
      for (auto& s : step) s = -s;
      auto A = JtJ;
      if (!detail::solve_dense(A, step)) {
        Real lm = Real::pow2(-40, bits);
        A = JtJ;
        for (std::size_t a = 0; a < n; ++a) A[a][a] += lm * (JtJ[a][a].is_zero() ? Real(1, bits) : JtJ[a][a]);
        step = g;
        for (auto& s : step) s = -s;
        if (!detail::solve_dense(A, step)) break;
      }
      bool improved = false;
      Real t(1, bits);
      for (int halving = 0; halving < 60; ++halving, t = t / Real(2, bits)) {
        std::vector<Real> trial = b;
        bool positive = true;
        for (std::size_t c = 0; c < n; ++c) {
          trial[free[c]] += t * step[c];
          positive = positive && trial[free[c]].sign() > 0;
        }
        if (!positive) continue;
        auto next = detail::residuals(sys, trial, bits);
        if (next.sum_sq < cur.sum_sq) {
          b = std::move(trial);
          cur = std::move(next);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (cur.max_abs < out.best_residual) out.best_residual = cur.max_abs;
    if (cur.max_abs < eps) {
      out.solution = b;
      return out;
    }
  }
  return out;
}

}  // namespace alsq
