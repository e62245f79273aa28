#pragma once

// Arbitrary-precision real numbers backed by MPFR.
//
// Every value carries its own precision in bits. Binary operations round
// to the larger of the two operand precisions, so mixing a 128-bit and a
// 256-bit value never silently loses the wider one.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace alsq {

inline constexpr unsigned kDefaultPrecisionBits = 128;

class Real {
 public:
  explicit Real(unsigned bits = kDefaultPrecisionBits) {
    mpfr_init2(v_, clamp(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(long value, unsigned bits) : Real(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(const mpq_class& value, unsigned bits) : Real(bits) {
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  Real(const mpz_class& value, unsigned bits) : Real(bits) {
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  static Real from_double(double value, unsigned bits) {
    Real r(bits);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
  }

  /// Parses a decimal string ("0.125", "-1.5e-3", "7"); throws on garbage.
  static Real parse(const std::string& text, unsigned bits) {
    Real r(bits);
    char* end = nullptr;
    mpfr_strtofr(r.v_, text.c_str(), &end, 10, MPFR_RNDN);
    if (text.empty() || end == text.c_str() || *end != '\0')
      throw std::invalid_argument("malformed decimal: '" + text + "'");
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  /// Same value rounded to a new precision.
  Real with_precision(unsigned bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent2() const { return is_zero() ? LONG_MIN : mpfr_get_exp(v_); }

  /// Decimal rendering with `digits` significant digits (0 = enough to
  /// round-trip at the current precision).
  std::string to_string(std::size_t digits = 0) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    if (digits == 0) digits = round_trip_digits(precision());
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, digits, v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    bool neg = mant[0] == '-';
    if (neg) mant.erase(0, 1);
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    std::string out = neg ? "-" : "";
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    if (exp - 1 != 0) out += "e" + std::to_string(exp - 1);
    return out;
  }

  static std::size_t round_trip_digits(unsigned bits) {
    return static_cast<std::size_t>(std::ceil(bits * 0.30102999566398120)) + 1;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
  friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
  friend Real log(const Real& a) { return unary(a, mpfr_log); }
  friend Real exp(const Real& a) { return unary(a, mpfr_exp); }
  friend Real pow(const Real& a, long n) {
    Real r(a.precision());
    mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real root4(const Real& a) {
    Real r(a.precision());
    mpfr_rootn_ui(r.v_, a.v_, 4, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }

  /// 2^e at the given precision.
  static Real pow2(long e, unsigned bits) {
    Real r(bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  static mpfr_prec_t clamp(unsigned bits) {
    return bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : static_cast<mpfr_prec_t>(bits);
  }
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static Real binary(const Real& a, const Real& b, BinaryFn fn) {
    Real r(std::max(a.precision(), b.precision()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static Real unary(const Real& a, UnaryFn fn) {
    Real r(a.precision());
    fn(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

// Namespace-scope declarations so qualified calls (alsq::sqrt) resolve
// even where a member named sqrt hides the friend.
Real sqrt(const Real& a);
Real abs(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
Real pow(const Real& a, long n);
Real root4(const Real& a);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Relative distance |a-b| / max(|a|,|b|), zero when both are zero.
inline Real relative_error(const Real& a, const Real& b) {
  Real scale = max(abs(a), abs(b));
  if (scale.is_zero()) return Real(std::max(a.precision(), b.precision()));
  return abs(a - b) / scale;
}

}  // namespace alsq
