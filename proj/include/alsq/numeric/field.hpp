#pragma once

// Scalar modes for measure weights.
//
// Weights are either exact (Surd) or MPFR reals at a configured precision.
// Algorithms are written once against Field<W>.

#include "alsq/numeric/real.hpp"
#include "alsq/numeric/surd.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace alsq {

struct NumericConfig {
  unsigned precision_bits = kDefaultPrecisionBits;
  double tolerance = 0x1p-64;
  std::uint64_t seed = 0x5eedULL;
  std::size_t max_candidates = 4096;
  std::size_t newton_starts = 32;
  std::size_t newton_iterations = 200;

  Real tol(unsigned bits) const { return Real::from_double(tolerance, bits); }
  Real tol() const { return tol(precision_bits); }
};

enum class ScalarMode { Exact, Real };

inline const char* to_string(ScalarMode m) { return m == ScalarMode::Exact ? "rational" : "real"; }

template <class W>
struct Field;

template <>
struct Field<Surd> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Exact;

  static Surd from_rational(const Rational& q, const NumericConfig&) { return Surd(q); }
  static std::optional<Surd> sqrt(const Surd& x, const NumericConfig&) { return x.sqrt(); }
  static int sign(const Surd& x) { return x.sign(); }
  static bool positive(const Surd& x, const NumericConfig&) { return x.sign() > 0; }
  static bool equal(const Surd& a, const Surd& b, const NumericConfig&) { return a == b; }
  static Real to_real(const Surd& x, unsigned bits) { return x.to_real(bits); }
  static std::string to_string(const Surd& x) { return x.to_string(); }
  static Surd parse(const std::string& text, const NumericConfig&) { return Surd::parse(text); }
};

template <>
struct Field<Real> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Real;

  static Real from_rational(const Rational& q, const NumericConfig& cfg) {
    return Real(q, cfg.precision_bits);
  }
  static std::optional<Real> sqrt(const Real& x, const NumericConfig&) {
    if (x.sign() < 0) return std::nullopt;
    return alsq::sqrt(x);
  }
  static int sign(const Real& x) { return x.sign(); }
  static bool positive(const Real& x, const NumericConfig& cfg) { return x > cfg.tol(x.precision()); }
  static bool equal(const Real& a, const Real& b, const NumericConfig& cfg) {
    return relative_error(a, b) < cfg.tol(std::max(a.precision(), b.precision()));
  }
  static Real to_real(const Real& x, unsigned bits) { return x.with_precision(bits); }
  static std::string to_string(const Real& x) { return x.to_string(); }

  /// Decimal strings are read at the configured precision; rational and
  /// radical expressions are evaluated exactly first.
  static Real parse(const std::string& text, const NumericConfig& cfg) {
    if (text.find_first_of("/s") != std::string::npos)
      return Surd::parse(text).to_real(cfg.precision_bits);
    return Real::parse(text, cfg.precision_bits);
  }
};

}  // namespace alsq
