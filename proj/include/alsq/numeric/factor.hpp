#pragma once

// Integer factoring and squarefree decomposition over GMP integers.
//
// Surd arithmetic needs the prime support of radicands (for field
// conjugation) and the squarefree part of rationals (for exact square
// roots). Inputs are small in practice; trial division handles almost
// everything and Pollard-Brent covers the rest.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace alsq {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

inline bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 64;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          Integer d = abs(x - y);
          q = (q * d) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    factor_into(root, primes);
    factor_into(root, primes);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

}  // namespace detail

/// Prime factorization of n >= 1 as (prime, exponent) pairs in increasing
/// prime order.
inline std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (n < 1) throw std::domain_error("factorize: argument must be positive");
  std::vector<Integer> primes;
  Integer rest = n;
  for (unsigned long p = 2; p < 1000 && rest > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      primes.emplace_back(p);
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
  }
  detail::factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

/// Writes n = square^2 * free with free squarefree.
struct SquarefreeSplit {
  Integer square;
  Integer free;
};

inline SquarefreeSplit squarefree_split(const Integer& n) {
  SquarefreeSplit out{1, 1};
  if (n == 1) return out;
  for (const auto& [p, e] : factorize(n)) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e / 2);
    out.square *= pk;
    if (e % 2) out.free *= p;
  }
  return out;
}

/// Smallest prime factor of n > 1.
inline Integer smallest_prime_factor(const Integer& n) {
  return factorize(n).front().first;
}

/// Exact square root of a nonnegative rational when it exists.
inline bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

/// sqrt(q) = coeff * sqrt(radicand) with radicand squarefree, for q > 0.
struct RationalRoot {
  Rational coeff;
  Integer radicand;
};

inline RationalRoot rational_root(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("rational_root: argument must be positive");
  // sqrt(a/b) = sqrt(a*b) / b
  Integer ab = q.get_num() * q.get_den();
  auto split = squarefree_split(ab);
  Rational c(split.square, q.get_den());
  c.canonicalize();
  return {c, split.free};
}

}  // namespace alsq
