#pragma once

// Impossibility certificates shared by the rule engine and the solvers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alsq {

enum class Rule {
  // combinatorial rules on the product diagram
  BoundaryProductsShared,     // second squares and outer corner products must be shared
  CardinalityBound,           // too many distinct products
  SecondSquareHitsExtremes,   // lambda_2^2 or lambda_{p-1}^2 equals lambda_1 lambda_p
  CrossedNearExtremeSquares,  // lambda_2^2 = lambda_1 lambda_{p-1} with lambda_{p-1}^2 = lambda_2 lambda_p
  EndpointSharedUnique,       // atoms k with both lambda_1 lambda_k and lambda_p lambda_k unique
  InteriorColumnUnique,       // outer product of an interior column shares nothing
  UniqueSquarePair,           // lambda_i^2, lambda_i lambda_j, lambda_j^2 all unique
  UniqueTriangle,             // lambda_i^2, lambda_i lambda_j, lambda_j lambda_k, lambda_i lambda_k all unique
  UniqueFourCycle,            // four unique products closing a cycle i-j-k-l
  UniqueDiagonalChain,        // lambda_i^2, lambda_i lambda_j, lambda_j lambda_k, lambda_k^2 unique, lambda_j^2 != lambda_i lambda_k
  SixAtomSquareHitsFifth,     // p = 6: lambda_2^2 = lambda_1 lambda_5 or lambda_5^2 = lambda_2 lambda_6
  SixAtomSplitSquares,        // p = 6: lambda_2^2 = lambda_1 lambda_4 and lambda_5^2 = lambda_3 lambda_6
  SixAtomCrossedSquares,      // p = 6: lambda_2^2 = lambda_1 lambda_3 and lambda_5^2 = lambda_4 lambda_6
  // closed forms
  FourAtomClosedForm,
  SmallCaseConditions,
  // equation level
  SupportMismatch,
  PropagationConflict,
  EquationViolated,
  NonPositiveWeight,
  CandidatesExhausted,
};

inline constexpr std::string_view rule_id(Rule r) {
  switch (r) {
    case Rule::BoundaryProductsShared: return "boundary-products-shared";
    case Rule::CardinalityBound: return "cardinality-bound";
    case Rule::SecondSquareHitsExtremes: return "second-square-hits-extremes";
    case Rule::CrossedNearExtremeSquares: return "crossed-near-extreme-squares";
    case Rule::EndpointSharedUnique: return "endpoint-shared-unique";
    case Rule::InteriorColumnUnique: return "interior-column-unique";
    case Rule::UniqueSquarePair: return "unique-square-pair";
    case Rule::UniqueTriangle: return "unique-triangle";
    case Rule::UniqueFourCycle: return "unique-four-cycle";
    case Rule::UniqueDiagonalChain: return "unique-diagonal-chain";
    case Rule::SixAtomSquareHitsFifth: return "six-atom-square-hits-fifth";
    case Rule::SixAtomSplitSquares: return "six-atom-split-squares";
    case Rule::SixAtomCrossedSquares: return "six-atom-crossed-squares";
    case Rule::FourAtomClosedForm: return "four-atom-closed-form";
    case Rule::SmallCaseConditions: return "small-case-conditions";
    case Rule::SupportMismatch: return "support-mismatch";
    case Rule::PropagationConflict: return "propagation-conflict";
    case Rule::EquationViolated: return "equation-violated";
    case Rule::NonPositiveWeight: return "nonpositive-weight";
    case Rule::CandidatesExhausted: return "candidates-exhausted";
  }
  return "unknown";
}

inline std::optional<Rule> rule_from_id(std::string_view id) {
  for (int r = 0; r <= static_cast<int>(Rule::CandidatesExhausted); ++r)
    if (rule_id(static_cast<Rule>(r)) == id) return static_cast<Rule>(r);
  return std::nullopt;
}

/// A proof of non-existence: the rule, 1-based atom indices, and a note.
struct Certificate {
  Rule rule;
  std::vector<std::size_t> indices;
  std::string detail;

  std::string to_string() const {
    std::string out(rule_id(rule));
    if (!indices.empty()) {
      out += " [";
      for (std::size_t k = 0; k < indices.size(); ++k) out += (k ? "," : "") + std::to_string(indices[k]);
      out += "]";
    }
    if (!detail.empty()) out += ": " + detail;
    return out;
  }
};

}  // namespace alsq
