#pragma once

#include "alsq/certificate.hpp"
#include "alsq/measure.hpp"
#include "alsq/numeric/real.hpp"
#include "alsq/numeric/surd.hpp"

#include <optional>
#include <string>
#include <variant>

namespace alsq {

enum class Outcome { Witness, Impossible, Undetermined };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Witness: return "witness";
    case Outcome::Impossible: return "impossible";
    case Outcome::Undetermined: return "undetermined";
  }
  return "undetermined";
}

using AnyMeasure = std::variant<AtomicMeasure<Surd>, AtomicMeasure<Real>>;

inline std::size_t measure_size(const AnyMeasure& m) {
  return std::visit([](const auto& x) { return x.size(); }, m);
}

inline AtomicMeasure<Real> any_to_real(const AnyMeasure& m, unsigned bits) {
  return std::visit([bits](const auto& x) { return to_real(x, bits); }, m);
}

/// Three-valued answer. Impossible always carries an exact certificate;
/// Witness carries the measure whenever its positions are representable.
struct Verdict {
  Outcome outcome = Outcome::Undetermined;
  std::optional<AnyMeasure> witness;
  std::optional<Certificate> certificate;
  std::optional<Real> residual;  // largest per-atom relative error of the witness check
  unsigned precision_bits = 0;   // 0 when everything was exact
  std::size_t candidates = 0;    // candidate supports examined (square roots)
  std::string note;

  static Verdict impossible(Certificate c) {
    Verdict v;
    v.outcome = Outcome::Impossible;
    v.certificate = std::move(c);
    return v;
  }
  static Verdict undetermined(std::string note, unsigned bits = 0) {
    Verdict v;
    v.note = std::move(note);
    v.precision_bits = bits;
    return v;
  }
  bool exact_witness() const {
    return witness && std::holds_alternative<AtomicMeasure<Surd>>(*witness);
  }
};

}  // namespace alsq
