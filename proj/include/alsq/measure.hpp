#pragma once

// Finitely atomic positive measures on (0, inf) and their algebra.
//
// A measure is an immutable, strictly increasing list of (position, weight)
// atoms. Positions are exact; weights are exact (Surd) or MPFR reals.

#include "alsq/numeric/field.hpp"
#include "alsq/position.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alsq {

/// Validation failure, optionally naming the offending atom (0-based).
class MeasureError : public std::invalid_argument {
 public:
  explicit MeasureError(const std::string& what, std::optional<std::size_t> atom = std::nullopt)
      : std::invalid_argument(atom ? what + " (atom " + std::to_string(*atom) + ")" : what),
        reason_(what),
        atom_(atom) {}
  std::optional<std::size_t> atom() const { return atom_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::optional<std::size_t> atom_;
};

template <class W>
struct Atom {
  Position position;
  W weight;
};

template <class W>
class AtomicMeasure {
 public:
  using weight_type = W;

  AtomicMeasure() = default;

  /// Sorts and validates: at least one atom, distinct positions, positive weights.
  static AtomicMeasure from_atoms(std::vector<Atom<W>> atoms, const NumericConfig& cfg = {}) {
    if (atoms.empty()) throw MeasureError("measure has no atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (!Field<W>::positive(atoms[i].weight, cfg)) throw MeasureError("weight must be positive", i);
    std::vector<std::size_t> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return atoms[a].position < atoms[b].position;
    });
    AtomicMeasure out;
    out.atoms_.reserve(atoms.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k > 0 && atoms[order[k]].position == out.atoms_.back().position)
        throw MeasureError("duplicate position " + atoms[order[k]].position.to_string(), order[k]);
      out.atoms_.push_back(std::move(atoms[order[k]]));
    }
    return out;
  }

  /// Builds from positions and weights listed in the same order.
  static AtomicMeasure from(const std::vector<Position>& xs, const std::vector<W>& ws,
                            const NumericConfig& cfg = {}) {
    if (xs.size() != ws.size()) throw MeasureError("position and weight counts differ");
    std::vector<Atom<W>> atoms;
    for (std::size_t i = 0; i < xs.size(); ++i) atoms.push_back({xs[i], ws[i]});
    return from_atoms(std::move(atoms), cfg);
  }

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const std::vector<Atom<W>>& atoms() const { return atoms_; }
  const Position& position(std::size_t i) const { return atoms_[i].position; }
  const W& weight(std::size_t i) const { return atoms_[i].weight; }

  std::vector<Position> support() const {
    std::vector<Position> xs;
    xs.reserve(atoms_.size());
    for (const auto& a : atoms_) xs.push_back(a.position);
    return xs;
  }
  std::vector<W> weights() const {
    std::vector<W> ws;
    ws.reserve(atoms_.size());
    for (const auto& a : atoms_) ws.push_back(a.weight);
    return ws;
  }

  /// Distinct radicands other than 1 used by the positions.
  std::set<Integer> radicands() const {
    std::set<Integer> out;
    for (const auto& a : atoms_)
      if (!a.position.is_rational()) out.insert(a.position.radicand());
    return out;
  }

  W mass() const {
    W total = atoms_.front().weight;
    for (std::size_t i = 1; i < atoms_.size(); ++i) total += atoms_[i].weight;
    return total;
  }

  /// Index of an exact position, if present.
  std::optional<std::size_t> find(const Position& x) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                               [](const Atom<W>& a, const Position& v) { return a.position < v; });
    if (it == atoms_.end() || !(it->position == x)) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
  }

  /// Trusted constructor for already sorted, merged, positive atoms.
  static AtomicMeasure unchecked(std::vector<Atom<W>> atoms) {
    AtomicMeasure out;
    out.atoms_ = std::move(atoms);
    return out;
  }

 private:
  std::vector<Atom<W>> atoms_;
};

/// Multiplicative convolution: atoms at all pairwise products, merged.
template <class W>
AtomicMeasure<W> convolve(const AtomicMeasure<W>& mu, const AtomicMeasure<W>& nu) {
  std::map<Position, W> acc;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      Position x = a.position * b.position;
      W w = a.weight * b.weight;
      auto it = acc.find(x);
      if (it == acc.end())
        acc.emplace(std::move(x), std::move(w));
      else
        it->second += w;
    }
  }
  std::vector<Atom<W>> atoms;
  atoms.reserve(acc.size());
  for (auto& [x, w] : acc) atoms.push_back({x, std::move(w)});
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

/// t mu: each mass multiplied by its position.
template <class W>
AtomicMeasure<W> t_weight(const AtomicMeasure<W>& mu, const NumericConfig& cfg = {}) {
  std::vector<Atom<W>> atoms = mu.atoms();
  for (auto& a : atoms) a.weight *= a.position.template as<W>(cfg);
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

/// gamma_n = sum a_i lambda_i^n.
template <class W>
W moment(const AtomicMeasure<W>& mu, unsigned n, const NumericConfig& cfg = {}) {
  std::optional<W> sum;
  for (const auto& a : mu.atoms()) {
    W term = a.weight * a.position.pow(n).template as<W>(cfg);
    if (sum)
      *sum += term;
    else
      sum = std::move(term);
  }
  return *sum;
}

template <class W>
AtomicMeasure<W> scale_positions(const AtomicMeasure<W>& mu, const Position& x) {
  std::vector<Atom<W>> atoms = mu.atoms();
  for (auto& a : atoms) a.position = a.position * x;
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

template <class W>
AtomicMeasure<W> scale_positions(const AtomicMeasure<W>& mu, const Rational& x) {
  if (sgn(x) <= 0) throw MeasureError("scale factor must be positive");
  return scale_positions(mu, Position(x));
}

/// lambda_i -> lambda_i^k for an integer k >= 1.
template <class W>
AtomicMeasure<W> power_positions(const AtomicMeasure<W>& mu, unsigned k) {
  if (k < 1) throw MeasureError("power exponent must be at least 1");
  std::vector<Atom<W>> atoms = mu.atoms();
  for (auto& a : atoms) a.position = a.position.pow(k);
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

template <class W>
AtomicMeasure<W> normalize(const AtomicMeasure<W>& mu) {
  W total = mu.mass();
  std::vector<Atom<W>> atoms = mu.atoms();
  for (auto& a : atoms) a.weight /= total;
  return AtomicMeasure<W>::unchecked(std::move(atoms));
}

inline AtomicMeasure<Real> to_real(const AtomicMeasure<Surd>& mu, unsigned bits) {
  std::vector<Atom<Real>> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back({a.position, a.weight.to_real(bits)});
  return AtomicMeasure<Real>::unchecked(std::move(atoms));
}

inline AtomicMeasure<Real> to_real(const AtomicMeasure<Real>& mu, unsigned bits) {
  std::vector<Atom<Real>> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back({a.position, a.weight.with_precision(bits)});
  return AtomicMeasure<Real>::unchecked(std::move(atoms));
}

/// Largest per-atom relative weight error, or none when supports differ.
template <class A, class B>
std::optional<Real> max_relative_error(const AtomicMeasure<A>& x, const AtomicMeasure<B>& y,
                                       unsigned bits) {
  if (x.size() != y.size()) return std::nullopt;
  Real worst(bits);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x.position(i) == y.position(i))) return std::nullopt;
    Real e = relative_error(Field<A>::to_real(x.weight(i), bits), Field<B>::to_real(y.weight(i), bits));
    worst = max(worst, e);
  }
  return worst;
}

/// Atom-by-atom equality: exact for Surd, relative error < tolerance for Real.
template <class W>
bool same_measure(const AtomicMeasure<W>& x, const AtomicMeasure<W>& y, const NumericConfig& cfg) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x.position(i) == y.position(i))) return false;
    if (!Field<W>::equal(x.weight(i), y.weight(i), cfg)) return false;
  }
  return true;
}

/// A measure on [0, inf): an optional mass at 0 plus atoms on (0, inf).
template <class W>
struct HalfLineMeasure {
  std::optional<W> zero_mass;
  std::vector<Atom<W>> atoms;
};

template <class W>
struct ZeroSplit {
  W zero_mass;
  AtomicMeasure<W> rest;
};

/// Separates the atom at 0 from the rest.
template <class W>
ZeroSplit<W> strip_zero_atom(const HalfLineMeasure<W>& mu, const NumericConfig& cfg = {}) {
  if (mu.atoms.empty()) throw MeasureError("measure has only a zero atom");
  W zero = mu.zero_mass ? *mu.zero_mass : Field<W>::from_rational(Rational(0), cfg);
  return {std::move(zero), AtomicMeasure<W>::from_atoms(mu.atoms, cfg)};
}

}  // namespace alsq
