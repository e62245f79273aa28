#pragma once

// Exact real algebraic numbers of the form  sum_d c_d * sqrt(d)
// with rational c_d and distinct squarefree integers d >= 1.
//
// These form the multiquadratic field generated over Q by square roots of
// rationals, which is closed under + - * / and contains every square root
// of a positive rational. Zero testing is structural (square roots of
// distinct squarefree integers are linearly independent over Q); the sign
// of a nonzero value is found by interval-style evaluation at increasing
// MPFR precision.

#include "alsq/numeric/factor.hpp"
#include "alsq/numeric/real.hpp"

#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alsq {

/// Parses "p", "p/q", "-3/4", "1.25", "2.5e-3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + text + "'"); };
  auto digits_only = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_only(num, true) || !digits_only(den, false)) throw bad();
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(Integer(strip_plus(num)), d);
    q.canonicalize();
    return q;
  }
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    std::string ex = s.substr(e + 1);
    if (!digits_only(ex, true)) throw bad();
    exp10 = std::stol(ex);
  }
  std::string int_part = mant, frac_part;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    int_part = mant.substr(0, dot);
    frac_part = mant.substr(dot + 1);
    if (!frac_part.empty() && !digits_only(frac_part, false)) throw bad();
  }
  bool neg = !int_part.empty() && int_part[0] == '-';
  if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.erase(0, 1);
  if (int_part.empty() && frac_part.empty()) throw bad();
  if (!int_part.empty() && !digits_only(int_part, false)) throw bad();
  Integer num(int_part.empty() ? "0" : int_part);
  Integer scale = 1;
  for (char ch : frac_part) {
    num = num * 10 + (ch - '0');
    scale *= 10;
  }
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 >= 0 ? Rational(num * ten_pow, scale) : Rational(num, scale * ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

class Surd {
 public:
  using Term = std::pair<Integer, Rational>;  // (squarefree radicand, coefficient)

  Surd() = default;
  Surd(long n) : Surd(Rational(n)) {}
  Surd(const Rational& q) {
    if (sgn(q) != 0) {
      terms_.emplace_back(Integer(1), q);
      terms_.back().second.canonicalize();
    }
  }
  Surd(const Integer& n) : Surd(Rational(n)) {}

  /// c * sqrt(radicand) for any positive integer radicand.
  static Surd term(const Rational& c, const Integer& radicand) {
    if (radicand < 1) throw std::domain_error("Surd::term: radicand must be positive");
    if (sgn(c) == 0) return {};
    auto split = squarefree_split(radicand);
    Surd out;
    out.terms_.emplace_back(split.free, Rational(c * split.square));
    out.terms_.back().second.canonicalize();
    return out;
  }

  /// Exact sqrt(q) for a rational q >= 0.
  static Surd sqrt_of(const Rational& q) {
    if (sgn(q) < 0) throw std::domain_error("Surd::sqrt_of: negative argument");
    if (sgn(q) == 0) return {};
    auto r = rational_root(q);
    Surd out;
    out.terms_.emplace_back(r.radicand, r.coeff);
    return out;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
  }
  Rational rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second : Rational(0);
  }

  Real to_real(unsigned bits) const {
    Real sum(bits);
    for (const auto& [d, c] : terms_) {
      Real t(c, bits);
      if (d != 1) t *= alsq::sqrt(Real(d, bits));
      sum += t;
    }
    return sum;
  }

  /// Exact sign, determined by evaluation with a rigorous error margin.
  int sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_[0].second);
    long slack = 4;
    for (std::size_t n = terms_.size(); n > 1; n >>= 1) ++slack;
    for (unsigned bits = 64; bits <= (1u << 22); bits *= 2) {
      Real sum(bits), mag(bits);
      for (const auto& [d, c] : terms_) {
        Real t(c, bits);
        if (d != 1) t *= alsq::sqrt(Real(d, bits));
        sum += t;
        mag += abs(t);
      }
      Real err = mag * Real::pow2(slack - static_cast<long>(bits), bits);
      if (abs(sum) > err) return sum.sign();
    }
    throw std::runtime_error("Surd::sign: precision exhausted");
  }

  Surd operator-() const {
    Surd out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }
  friend Surd operator+(const Surd& a, const Surd& b) {
    Surd out;
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        out.terms_.push_back(*j++);
      } else {
        Rational c = i->second + j->second;
        if (sgn(c) != 0) out.terms_.emplace_back(i->first, c);
        ++i;
        ++j;
      }
    }
    return out;
  }
  friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }
  friend Surd operator*(const Surd& a, const Surd& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<Integer, Rational> acc;
    for (const auto& [d1, c1] : a.terms_) {
      for (const auto& [d2, c2] : b.terms_) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
        Integer d = (d1 / g) * (d2 / g);
        acc[d] += c1 * c2 * g;
      }
    }
    return from_map(acc);
  }
  friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }
  Surd& operator+=(const Surd& b) { return *this = *this + b; }
  Surd& operator-=(const Surd& b) { return *this = *this - b; }
  Surd& operator*=(const Surd& b) { return *this = *this * b; }
  Surd& operator/=(const Surd& b) { return *this = *this / b; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Surd inverse() const {
    if (is_zero()) throw std::domain_error("Surd: division by zero");
    if (is_rational()) return Surd(Rational(1 / terms_[0].second));
    // x = u + v*sqrt(p); x * (u - v*sqrt(p)) = u^2 - p v^2 has no sqrt(p).
    Integer p = splitting_prime();
    auto [u, v] = split(p);
    Surd conj = u - v.times_sqrt(p);
    Surd norm = *this * conj;
    return conj * norm.inverse();
  }

  /// Exact positive square root inside the field, when one exists.
  std::optional<Surd> sqrt() const { return sqrt_impl(*this, 0); }

  /// Canonical text: terms by increasing radicand, e.g. "-1/2+1/2*sqrt(2)".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
      Rational mag = abs(c);
      if (sgn(c) < 0)
        out += "-";
      else if (!first)
        out += "+";
      if (d == 1) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += "sqrt(" + d.get_str() + ")";
      }
      first = false;
    }
    return out;
  }

  /// Parses arithmetic over rationals and square roots: "+ - * /",
  /// parentheses, decimals (read exactly) and sqrt(...), e.g.
  /// "(sqrt(2)-1)/2" or "7/4-sqrt(2)".
  static Surd parse(const std::string& text) {
    Parser ps{text, 0};
    Surd v = ps.expr();
    ps.skip();
    if (ps.i != text.size()) ps.fail();
    return v;
  }

 private:
  static Surd from_map(const std::map<Integer, Rational>& acc) {
    Surd out;
    for (const auto& [d, c] : acc)
      if (sgn(c) != 0) out.terms_.emplace_back(d, c);
    return out;
  }

  Integer splitting_prime() const {
    for (const auto& [d, c] : terms_)
      if (d != 1) return smallest_prime_factor(d);
    throw std::logic_error("Surd::splitting_prime on a rational");
  }

  /// this = u + v*sqrt(p) where neither u nor v involves sqrt(p).
  std::pair<Surd, Surd> split(const Integer& p) const {
    std::map<Integer, Rational> u, v;
    for (const auto& [d, c] : terms_) {
      if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()))
        v[d / p] += c;
      else
        u[d] += c;
    }
    return {from_map(u), from_map(v)};
  }

  /// Multiplies by sqrt(p) for a prime p absent from every radicand.
  Surd times_sqrt(const Integer& p) const {
    std::map<Integer, Rational> acc;
    for (const auto& [d, c] : terms_) acc[d * p] += c;
    return from_map(acc);
  }

  static std::optional<Surd> sqrt_impl(const Surd& x, int depth) {
    if (x.is_zero()) return Surd();
    if (x.sign() < 0) return std::nullopt;
    if (x.is_rational()) return sqrt_of(x.rational_part());
    if (depth > 6) return std::nullopt;
    // (s + t sqrt(p))^2 = s^2 + p t^2 + 2 s t sqrt(p), matched against u + v sqrt(p).
    Integer p = x.splitting_prime();
    auto [u, v] = x.split(p);
    Surd disc = u * u - Surd(Rational(p)) * v * v;
    auto w = sqrt_impl(disc, depth + 1);
    if (!w) return std::nullopt;
    for (const Surd& s2 : {(u + *w) * Surd(Rational(1, 2)), (u - *w) * Surd(Rational(1, 2))}) {
      if (s2.sign() <= 0) continue;
      auto s = sqrt_impl(s2, depth + 1);
      if (!s) continue;
      Surd t = v / (Surd(2) * *s);
      Surd y = *s + t.times_sqrt_general(p);
      if (y * y == x) return y.sign() > 0 ? y : -y;
    }
    return std::nullopt;
  }

  Surd times_sqrt_general(const Integer& p) const { return *this * term(Rational(1), p); }

  struct Parser {
    const std::string& s;
    std::size_t i;

    [[noreturn]] void fail() const {
      throw std::invalid_argument("malformed number at offset " + std::to_string(i) + ": '" + s + "'");
    }
    void skip() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
      skip();
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    Surd expr() {
      Surd v = term();
      for (;;) {
        if (eat('+'))
          v += term();
        else if (eat('-'))
          v -= term();
        else
          return v;
      }
    }
    Surd term() {
      Surd v = unary();
      for (;;) {
        if (eat('*')) {
          v *= unary();
        } else if (eat('/')) {
          Surd d = unary();
          if (d.is_zero()) throw std::invalid_argument("division by zero in '" + s + "'");
          v /= d;
        } else {
          return v;
        }
      }
    }
    Surd unary() {
      if (eat('-')) return -unary();
      if (eat('+')) return unary();
      return primary();
    }
    Surd primary() {
      skip();
      if (eat('(')) {
        Surd v = expr();
        if (!eat(')')) fail();
        return v;
      }
      if (s.compare(i, 4, "sqrt") == 0) {
        i += 4;
        if (!eat('(')) fail();
        Surd arg = expr();
        if (!eat(')')) fail();
        if (arg.sign() < 0) throw std::invalid_argument("sqrt of negative in '" + s + "'");
        auto r = arg.sqrt();
        if (!r) throw std::invalid_argument("sqrt leaves the supported number class in '" + s + "'");
        return *r;
      }
      std::size_t start = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t save = i++;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        } else {
          i = save;
        }
      }
      if (start == i) fail();
      return Surd(parse_rational(s.substr(start, i - start)));
    }
  };

  std::vector<Term> terms_;
};

inline Surd abs(const Surd& x) { return x.sign() < 0 ? -x : x; }

}  // namespace alsq
