#pragma once

// Exact atom positions q * sqrt(d) with rational q > 0 and squarefree d.
//
// The class is closed under products and quotients, and comparison is
// exact: two positions are ordered by their squares, which are rational.

#include "alsq/numeric/factor.hpp"
#include "alsq/numeric/field.hpp"
#include "alsq/numeric/real.hpp"
#include "alsq/numeric/surd.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alsq {

class Position {
 public:
  Position() : q_(1), d_(1) {}

  /// q * sqrt(radicand); the radicand need not be squarefree.
  explicit Position(const Rational& q, const Integer& radicand = 1) {
    if (sgn(q) <= 0) throw std::domain_error("position must be positive");
    if (radicand < 1) throw std::domain_error("position radicand must be positive");
    auto split = squarefree_split(radicand);
    q_ = q * split.square;
    q_.canonicalize();
    d_ = split.free;
  }
  Position(long n) : Position(Rational(n)) {}

  /// sqrt(q) for a rational q > 0.
  static Position sqrt_of(const Rational& q) {
    auto r = rational_root(q);
    Position x;
    x.q_ = r.coeff;
    x.d_ = r.radicand;
    return x;
  }

  /// Parses "3", "3/2", "2*sqrt(3)", "sqrt(5)/2" style text.
  static Position parse(const std::string& text) {
    Surd s = Surd::parse(text);
    if (s.terms().size() != 1 || s.sign() <= 0)
      throw std::invalid_argument("position must be a single positive term: '" + text + "'");
    return Position(s.terms()[0].second, s.terms()[0].first);
  }

  const Rational& coeff() const { return q_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return d_ == 1; }

  /// The square, always rational.
  Rational square() const { return Rational(q_ * q_ * d_); }

  Surd to_surd() const { return Surd::term(q_, d_); }
  Real to_real(unsigned bits) const {
    Real r(q_, bits);
    if (d_ != 1) r *= alsq::sqrt(Real(d_, bits));
    return r;
  }

  template <class W>
  W as(const NumericConfig& cfg) const {
    if constexpr (Field<W>::exact)
      return to_surd();
    else
      return to_real(cfg.precision_bits);
  }

  friend Position operator*(const Position& a, const Position& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.d_.get_mpz_t(), b.d_.get_mpz_t());
    Position out;
    out.q_ = a.q_ * b.q_ * g;
    out.q_.canonicalize();
    out.d_ = (a.d_ / g) * (b.d_ / g);
    return out;
  }
  Position inverse() const {
    // 1/(q sqrt d) = sqrt(d) / (q d)
    Position out;
    out.q_ = 1 / (q_ * d_);
    out.d_ = d_;
    return out;
  }
  friend Position operator/(const Position& a, const Position& b) { return a * b.inverse(); }

  Position pow(unsigned k) const {
    Position out;
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Exact square root, when it stays in the class (needs d = 1).
  std::optional<Position> sqrt() const {
    if (d_ != 1) return std::nullopt;
    return sqrt_of(q_);
  }

  friend bool operator==(const Position& a, const Position& b) {
    return a.d_ == b.d_ && a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Position& a, const Position& b) {
    if (a.d_ == b.d_) return cmp(a.q_, b.q_) <=> 0;
    return cmp(a.square(), b.square()) <=> 0;
  }

  std::string to_string() const {
    if (d_ == 1) return q_.get_str();
    std::string out = q_ == 1 ? "" : q_.get_str() + "*";
    return out + "sqrt(" + d_.get_str() + ")";
  }

 private:
  Rational q_;
  Integer d_;
};

/// Strictly increasing check for a support list.
inline bool strictly_increasing(const std::vector<Position>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) return false;
  return true;
}

}  // namespace alsq
