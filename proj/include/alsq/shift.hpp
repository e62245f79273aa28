#pragma once

// Weighted shifts from atomic Berger measures.
//
//   gamma_n = int t^n dmu (mu normalized),  alpha_n = sqrt(gamma_{n+1} / gamma_n)
//   Aluthge transform:  alpha~_n = sqrt(alpha_n alpha_{n+1})
//   gamma~_n = prod_{k<n} alpha~_k^2, so gamma~_n^2 gamma_1 = gamma_n gamma_{n+1}

#include "alsq/measure.hpp"
#include "alsq/numeric/field.hpp"
#include "alsq/numeric/real.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace alsq {

using WeightSequence = std::vector<Real>;
using MomentSequence = std::vector<Real>;

/// gamma_0 .. gamma_count-1 of mu / mass(mu).
template <class W>
MomentSequence berger_moments(const AtomicMeasure<W>& mu, std::size_t count, unsigned bits) {
  auto r = to_real(mu, bits);
  Real mass(bits);
  for (const auto& a : r.atoms()) mass += a.weight;
  std::vector<Real> x, w;
  for (const auto& a : r.atoms()) {
    x.push_back(a.position.to_real(bits));
    w.push_back(a.weight / mass);
  }
  MomentSequence g;
  for (std::size_t n = 0; n < count; ++n) {
    Real s(bits);
    for (std::size_t i = 0; i < w.size(); ++i) {
      s += w[i];
      w[i] *= x[i];
    }
    g.push_back(std::move(s));
  }
  return g;
}

/// alpha_0 .. alpha_{n-1}.
template <class W>
WeightSequence weights_from_measure(const AtomicMeasure<W>& mu, std::size_t n, unsigned bits) {
  auto g = berger_moments(mu, n + 1, bits);
  WeightSequence a;
  for (std::size_t k = 0; k < n; ++k) a.push_back(sqrt(g[k + 1] / g[k]));
  return a;
}

inline WeightSequence aluthge_weights(const WeightSequence& alpha) {
  if (alpha.size() < 2) throw std::invalid_argument("Aluthge weights need at least two shift weights");
  WeightSequence out;
  for (std::size_t k = 0; k + 1 < alpha.size(); ++k) out.push_back(sqrt(alpha[k] * alpha[k + 1]));
  return out;
}

/// gamma_0 = 1, gamma_k = alpha_0^2 ... alpha_{k-1}^2; one more entry than alpha.
inline MomentSequence moments_from_weights(const WeightSequence& alpha, unsigned bits) {
  MomentSequence g{Real(1, bits)};
  for (const auto& a : alpha) g.push_back(g.back() * a * a);
  return g;
}

/// gamma~_0 .. gamma~_{count-1} of the Aluthge transform of the shift of mu.
template <class W>
MomentSequence aluthge_moments(const AtomicMeasure<W>& mu, std::size_t count, unsigned bits) {
  return moments_from_weights(aluthge_weights(weights_from_measure(mu, count, bits)), bits);
}

namespace detail {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<Real> symmetric_eigenvalues(std::vector<std::vector<Real>> a, unsigned bits) {
  std::size_t n = a.size();
  Real tiny = Real::pow2(-static_cast<long>(bits) - 8, bits);
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off(bits), total(bits);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Real s = a[i][j] * a[i][j];
        total += s;
        if (i != j) off += s;
      }
    if (off <= tiny * tiny * total) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q].is_zero()) continue;
        Real theta = (a[q][q] - a[p][p]) / (a[p][q] + a[p][q]);
        Real one(1, bits);
        Real t = one / (abs(theta) + sqrt(theta * theta + one));
        if (theta.sign() < 0) t = -t;
        Real c = one / sqrt(t * t + one);
        Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          Real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<Real> ev;
  for (std::size_t i = 0; i < n; ++i) ev.push_back(a[i][i]);
  return ev;
}

inline bool psd(const MomentSequence& g, std::size_t n, std::size_t shift, const Real& eps, unsigned bits) {
  std::vector<std::vector<Real>> h(n + 1, std::vector<Real>(n + 1, Real(bits)));
  Real trace(bits);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) h[i][j] = g[i + j + shift].with_precision(bits);
    trace += h[i][i];
  }
  for (const auto& e : symmetric_eigenvalues(std::move(h), bits))
    if (e < -(eps * trace)) return false;
  return true;
}

}  // namespace detail

struct HankelResult {
  bool a = false;  // (gamma_{i+j})_{i,j<=n}
  bool b = false;  // (gamma_{i+j+1})_{i,j<=n}
};

/// Stieltjes positivity of the two Hankel matrices of order n + 1.
inline HankelResult hankel_psd(const MomentSequence& g, std::size_t n, const NumericConfig& cfg = {}) {
  if (g.size() < 2 * n + 2)
    throw std::invalid_argument("hankel_psd needs " + std::to_string(2 * n + 2) + " moments, got " +
                                std::to_string(g.size()));
  unsigned bits = cfg.precision_bits;
  Real eps = cfg.tol(bits);
  return {detail::psd(g, n, 0, eps, bits), detail::psd(g, n, 1, eps, bits)};
}

}  // namespace alsq
