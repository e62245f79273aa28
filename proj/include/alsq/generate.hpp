#pragma once

// Deterministic random instances.
//
//   WithRoot        mu = rho * rho for a random rho, rho retained
//   WithAluthgeRoot mu = rho * rho with rho in the closed-form shapes for
//                   p = 3, 5, 6; nu = rho * t rho solves nu * nu = mu * t mu
//   Arbitrary       random support and weights
//   Perturbed       a WithAluthgeRoot instance with one ingredient broken
//   CrossedSix      six atoms with lambda_2^2 = lambda_1 lambda_3 and
//                   lambda_5^2 = lambda_4 lambda_6

#include "alsq/measure.hpp"
#include "alsq/product_diagram.hpp"
#include "alsq/verdict.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace alsq {

enum class GenMode { WithRoot, WithAluthgeRoot, Arbitrary, Perturbed, CrossedSix };
enum class PositionStyle { Geometric, Random };
enum class SixCase { SquaresThroughFourth, SquaresThroughThird };
enum class Breakage { Weight, Support };

inline const char* to_string(GenMode m) {
  switch (m) {
    case GenMode::WithRoot: return "with-root";
    case GenMode::WithAluthgeRoot: return "with-aluthge-root";
    case GenMode::Arbitrary: return "arbitrary";
    case GenMode::Perturbed: return "perturbed";
    case GenMode::CrossedSix: return "crossed-six";
  }
  return "arbitrary";
}

inline GenMode gen_mode_from(const std::string& s) {
  for (auto m : {GenMode::WithRoot, GenMode::WithAluthgeRoot, GenMode::Arbitrary, GenMode::Perturbed,
                 GenMode::CrossedSix})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown generator mode '" + s + "'");
}

struct GeneratorSpec {
  std::size_t p = 3;
  GenMode mode = GenMode::WithRoot;
  std::uint64_t seed = 0x5eed;
  PositionStyle style = PositionStyle::Random;
  ScalarMode scalars = ScalarMode::Exact;
  SixCase six_case = SixCase::SquaresThroughFourth;
  Breakage breakage = Breakage::Weight;
  std::size_t broken_atom = 0;  // 1-based; 0 picks one at random
  unsigned precision_bits = 128;
};

struct GeneratedInstance {
  AnyMeasure measure;
  std::optional<AnyMeasure> root;  // rho with rho * rho = measure
  std::string description;
};

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational weight() { return Rational(integer(1, 12), integer(1, 12)); }

  /// Ratio > 1 from a small set of rationals.
  Rational ratio() {
    static const long table[][2] = {{2, 1}, {3, 1}, {5, 2}, {7, 2}, {7, 3}, {4, 1}, {5, 1}, {9, 4}, {8, 3}};
    const auto& r = table[integer(0, 8)];
    return Rational(r[0], r[1]);
  }

  Rational base() { return Rational(integer(1, 6), integer(1, 4)); }

  /// Percent in [1, 50] as delta in [0.01, 0.5].
  Rational delta() { return Rational(integer(1, 50), 100); }

  std::vector<Rational> random_support(std::size_t n) {
    std::set<Rational> s;
    while (s.size() < n) s.insert(Rational(integer(1, 60), integer(1, 6)));
    return {s.begin(), s.end()};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline AtomicMeasure<Surd> rational_measure(const std::vector<Rational>& xs, const std::vector<Rational>& ws) {
  std::vector<Atom<Surd>> atoms;
  for (std::size_t i = 0; i < xs.size(); ++i) atoms.push_back({Position(xs[i]), Surd(ws[i])});
  return AtomicMeasure<Surd>::from_atoms(std::move(atoms));
}

inline std::vector<Rational> geometric(const Rational& a, const Rational& r, std::size_t n) {
  std::vector<Rational> out{a};
  while (out.size() < n) out.push_back(out.back() * r);
  return out;
}

inline std::size_t product_count(const std::vector<Rational>& ys) {
  std::set<Rational> s;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i; j < ys.size(); ++j) s.insert(ys[i] * ys[j]);
  return s.size();
}

inline GeneratedInstance finish(const AtomicMeasure<Surd>& mu, std::optional<AtomicMeasure<Surd>> rho,
                                const GeneratorSpec& spec, std::string description) {
  GeneratedInstance g;
  if (spec.scalars == ScalarMode::Exact) {
    g.measure = mu;
    if (rho) g.root = *rho;
  } else {
    g.measure = to_real(mu, spec.precision_bits);
    if (rho) g.root = to_real(*rho, spec.precision_bits);
  }
  g.description = std::move(description);
  return g;
}

/// rho on ys with random weights.
inline AtomicMeasure<Surd> random_root(Draw& d, const std::vector<Rational>& ys) {
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < ys.size(); ++i) ws.push_back(d.weight());
  return rational_measure(ys, ws);
}

/// Root support for the closed-form shapes.
inline std::vector<Rational> shaped_root_support(Draw& d, const GeneratorSpec& spec) {
  Rational y = d.base();
  switch (spec.p) {
    case 3: return geometric(y, d.ratio(), 2);
    case 5: return geometric(y, d.ratio(), 3);
    case 6: {
      // y, y r, y r R: R < r puts y_2^2 between y_1 y_3 and y_2 y_3
      for (;;) {
        Rational r = d.ratio(), R = d.ratio();
        if (r == R) continue;
        if ((spec.six_case == SixCase::SquaresThroughFourth) != (R < r)) std::swap(r, R);
        return {y, y * r, y * r * R};
      }
    }
    default: break;
  }
  if (spec.p == 4) throw std::invalid_argument("no four-atom measure has an Aluthge root");
  throw std::invalid_argument("closed-form Aluthge roots exist for p = 3, 5, 6 only");
}

}  // namespace detail

inline GeneratedInstance generate(const GeneratorSpec& spec) {
  if (spec.p < 1) throw std::invalid_argument("p must be at least 1");
  detail::Draw d(spec.seed);
  std::size_t p = spec.p;

  switch (spec.mode) {
    case GenMode::WithRoot: {
      std::size_t qmin = 1;
      while (qmin * (qmin + 1) / 2 < p) ++qmin;
      std::size_t qmax = (p + 1) / 2;
      if (qmin > qmax || p == 2 || p == 4)
        throw std::invalid_argument("no measure with " + std::to_string(p) + " atoms is a convolution square");
      if (spec.style == PositionStyle::Geometric) {
        if (p % 2 == 0) throw std::invalid_argument("geometric roots give an odd number of atoms");
        auto rho = detail::random_root(d, detail::geometric(d.base(), d.ratio(), qmax));
        return detail::finish(convolve(rho, rho), rho, spec, "rho * rho, geometric rho");
      }
      for (int attempt = 0; attempt < 100000; ++attempt) {
        std::size_t q = static_cast<std::size_t>(d.integer(static_cast<long>(qmin), static_cast<long>(qmax)));
        auto ys = d.random_support(q);
        if (detail::product_count(ys) != p) continue;
        auto rho = detail::random_root(d, ys);
        return detail::finish(convolve(rho, rho), rho, spec, "rho * rho");
      }
      throw std::invalid_argument("could not draw a root support for p = " + std::to_string(p));
    }

    case GenMode::WithAluthgeRoot: {
      auto rho = detail::random_root(d, detail::shaped_root_support(d, spec));
      return detail::finish(convolve(rho, rho), rho, spec, "closed-form shape, p = " + std::to_string(p));
    }

    case GenMode::Arbitrary: {
      std::vector<Rational> xs =
          spec.style == PositionStyle::Geometric ? detail::geometric(d.base(), d.ratio(), p) : d.random_support(p);
      std::vector<Rational> ws;
      for (std::size_t i = 0; i < p; ++i) ws.push_back(d.weight());
      return detail::finish(detail::rational_measure(xs, ws), std::nullopt, spec, "arbitrary");
    }

    case GenMode::Perturbed: {
      auto rho = detail::random_root(d, detail::shaped_root_support(d, spec));
      auto mu = convolve(rho, rho);
      std::vector<Rational> xs, ws;
      for (const auto& a : mu.atoms()) {
        xs.push_back(a.position.coeff());
        ws.push_back(a.weight.rational_part());
      }
      Rational factor = Rational(1) + d.delta();
      std::size_t k = spec.broken_atom;
      if (spec.breakage == Breakage::Weight) {
        if (k == 0) k = static_cast<std::size_t>(d.integer(1, static_cast<long>(p)));
        if (k > p) throw std::invalid_argument("broken atom index out of range");
        ws[k - 1] *= factor;
        return detail::finish(detail::rational_measure(xs, ws), std::nullopt, spec,
                              "weight " + std::to_string(k) + " scaled by " + factor.get_str());
      }
      // move an interior atom by a factor below the neighbouring ratio
      if (p < 3) throw std::invalid_argument("support perturbation needs an interior atom");
      if (k == 0) k = static_cast<std::size_t>(d.integer(2, static_cast<long>(p) - 1));
      if (k < 2 || k >= p) throw std::invalid_argument("support perturbation needs an interior atom");
      for (;;) {
        Rational moved = xs[k - 1] * factor;
        if (moved < xs[k] && moved != xs[k - 1]) {
          xs[k - 1] = moved;
          break;
        }
        factor = Rational(1) + (factor - 1) / 2;
      }
      return detail::finish(detail::rational_measure(xs, ws), std::nullopt, spec,
                            "position " + std::to_string(k) + " scaled by " + factor.get_str());
    }

    case GenMode::CrossedSix: {
      if (p != 6) throw std::invalid_argument("crossed-six instances have six atoms");
      Rational a = d.base(), r = d.ratio(), s = d.ratio(), t = d.ratio();
      // a (1, r, r^2, L, L t, L t^2) with L = s r^2 > r^2
      Rational lead = s * r * r;
      std::vector<Rational> xs = {a, a * r, a * r * r, a * lead, a * lead * t, a * lead * t * t};
      std::vector<Rational> ws;
      for (std::size_t i = 0; i < 6; ++i) ws.push_back(d.weight());
      return detail::finish(detail::rational_measure(xs, ws), std::nullopt, spec, "crossed squares");
    }
  }
  throw std::invalid_argument("unknown generator mode");
}

}  // namespace alsq
