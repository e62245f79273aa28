#pragma once

// Pairwise product table of a support and its uniquely represented entries.

#include "alsq/position.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alsq {

/// Unordered index pair, 0-based, with i <= j.
struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  bool diagonal() const { return i == j; }
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct DiagramEntry {
  Position value;
  std::vector<IndexPair> pairs;  // in (i, j) lexicographic order
  bool unique() const { return pairs.size() == 1; }
};

class ProductDiagram {
 public:
  ProductDiagram() = default;

  std::size_t atoms() const { return p_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<DiagramEntry>& entries() const { return entries_; }
  const DiagramEntry& entry(std::size_t e) const { return entries_[e]; }
  const std::vector<Position>& support() const { return support_; }

  /// Entry index holding the product of atoms i and j (0-based).
  std::size_t entry_of(std::size_t i, std::size_t j) const { return slot_[i * p_ + j]; }
  const Position& product(std::size_t i, std::size_t j) const { return entries_[entry_of(i, j)].value; }
  bool unique(std::size_t i, std::size_t j) const { return entries_[entry_of(i, j)].unique(); }
  bool same(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return entry_of(i, j) == entry_of(k, l);
  }

  std::optional<std::size_t> find(const Position& x) const {
    std::size_t lo = 0, hi = entries_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (entries_[mid].value < x)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < entries_.size() && entries_[lo].value == x) return lo;
    return std::nullopt;
  }

  friend ProductDiagram pair_diagram(const std::vector<Position>& support);

 private:
  std::size_t p_ = 0;
  std::vector<Position> support_;
  std::vector<DiagramEntry> entries_;
  std::vector<std::size_t> slot_;
};

inline ProductDiagram pair_diagram(const std::vector<Position>& support) {
  if (support.empty()) throw std::invalid_argument("pair_diagram: empty support");
  if (!strictly_increasing(support))
    throw std::invalid_argument("pair_diagram: support must be strictly increasing without duplicates");
  ProductDiagram d;
  d.p_ = support.size();
  d.support_ = support;
  std::map<Position, std::vector<IndexPair>> groups;
  for (std::size_t i = 0; i < d.p_; ++i)
    for (std::size_t j = i; j < d.p_; ++j) groups[support[i] * support[j]].push_back({i, j});
  d.slot_.assign(d.p_ * d.p_, 0);
  for (auto& [value, pairs] : groups) {
    std::size_t e = d.entries_.size();
    for (const auto& pr : pairs) {
      d.slot_[pr.i * d.p_ + pr.j] = e;
      d.slot_[pr.j * d.p_ + pr.i] = e;
    }
    d.entries_.push_back({value, std::move(pairs)});
  }
  return d;
}

struct URClassification {
  std::vector<Position> ur;
  std::vector<Position> nur;
};

inline URClassification classify_ur(const ProductDiagram& d) {
  URClassification c;
  for (const auto& e : d.entries()) (e.unique() ? c.ur : c.nur).push_back(e.value);
  return c;
}

/// lambda_i = a * r^(i-1).
struct GeometricProfile {
  Position a;
  Position r;
};

inline std::optional<GeometricProfile> geometric_profile(const std::vector<Position>& support) {
  if (support.empty()) return std::nullopt;
  if (support.size() == 1) return GeometricProfile{support[0], Position(1)};
  Position r = support[1] / support[0];
  for (std::size_t i = 2; i < support.size(); ++i)
    if (!(support[i] == support[i - 1] * r)) return std::nullopt;
  return GeometricProfile{support[0], r};
}

struct CardinalityReport {
  std::size_t card = 0;
  std::size_t lower = 0;                // 2p - 1
  std::optional<std::size_t> upper;     // floor(((p-1)^2 + 6) / 2), p >= 4 only
  bool violated = false;
};

inline CardinalityReport cardinality_check(const ProductDiagram& d) {
  CardinalityReport r;
  std::size_t p = d.atoms();
  r.card = d.size();
  r.lower = 2 * p - 1;
  if (p >= 4) r.upper = ((p - 1) * (p - 1) + 6) / 2;
  r.violated = r.card < r.lower || (r.upper && r.card > *r.upper);
  return r;
}

}  // namespace alsq
