#pragma once

// Linear recurrences gamma_{n+r} = a_{r-1} gamma_{n+r-1} + ... + a_0 gamma_n
// found by exact elimination over the rationals.

#include "alsq/measure.hpp"
#include "alsq/numeric/factor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alsq {

struct RecurrenceCoefficients {
  std::size_t order = 0;
  std::vector<Rational> coeffs;  // a_0 .. a_{r-1}

  /// Monic characteristic polynomial t^r - a_{r-1} t^{r-1} - ... - a_0,
  /// lowest degree first.
  std::vector<Rational> characteristic() const {
    std::vector<Rational> c;
    for (const auto& a : coeffs) c.push_back(-a);
    c.push_back(Rational(1));
    return c;
  }
};

/// prod (t - r_i), lowest degree first.
inline std::vector<Rational> monic_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& r : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

/// gamma_0 .. gamma_{count-1} of mu / mass(mu); positions and weights must be rational.
inline std::vector<Rational> exact_moments(const AtomicMeasure<Surd>& mu, std::size_t count) {
  std::vector<Rational> x, w;
  Rational mass(0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!mu.position(i).is_rational() || !mu.weight(i).is_rational())
      throw MeasureError("exact moments need rational positions and weights", i);
    x.push_back(mu.position(i).coeff());
    w.push_back(mu.weight(i).rational_part());
    mass += w.back();
  }
  for (auto& v : w) v /= mass;
  std::vector<Rational> g;
  for (std::size_t n = 0; n < count; ++n) {
    Rational s(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      s += w[i];
      w[i] *= x[i];
    }
    g.push_back(s);
  }
  return g;
}

namespace detail {

/// Some solution of M a = y over Q, if the system is consistent.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> y) {
  std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::swap(y[piv], y[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      y[i] -= f * y[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (y[i] != 0) return std::nullopt;
  std::vector<Rational> a(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) a[pivot_col[i]] = y[i] / m[i][pivot_col[i]];
  return a;
}

}  // namespace detail

/// Smallest order r <= max_order whose recurrence fits every entry of
/// gamma. Each order is tested on at least r + 1 equations, so the
/// coefficients are never fitted without a checking row.
inline std::optional<RecurrenceCoefficients> minimal_recurrence(const std::vector<Rational>& gamma,
                                                                std::size_t max_order) {
  if (max_order == 0) throw std::invalid_argument("max_order must be at least 1");
  if (gamma.size() < 2 * max_order + 1)
    throw std::invalid_argument("minimal_recurrence needs " + std::to_string(2 * max_order + 1) +
                                " moments for order " + std::to_string(max_order) + ", got " +
                                std::to_string(gamma.size()));
  for (std::size_t r = 1; r <= max_order; ++r) {
    std::size_t rows = gamma.size() - r;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(r));
    std::vector<Rational> y(rows);
    for (std::size_t n = 0; n < rows; ++n) {
      for (std::size_t j = 0; j < r; ++j) m[n][j] = gamma[n + j];
      y[n] = gamma[n + r];
    }
    if (auto a = detail::solve_exact(std::move(m), std::move(y))) return RecurrenceCoefficients{r, *a};
  }
  return std::nullopt;
}

}  // namespace alsq
