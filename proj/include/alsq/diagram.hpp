#pragma once

// ASCII picture of a product diagram: row i, column j >= i holds
// lambda_i lambda_j; '*' marks uniquely represented products. Products
// reached by several pairs are listed underneath as equality chains.

#include "alsq/product_diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace alsq {

inline constexpr std::size_t kMaxDiagramAtoms = 12;

inline std::string render_diagram(const ProductDiagram& d) {
  std::size_t p = d.atoms();
  if (p > kMaxDiagramAtoms)
    throw std::invalid_argument("diagram layout supports at most " + std::to_string(kMaxDiagramAtoms) +
                                " atoms; use JSON output for p = " + std::to_string(p));
  auto cell = [&](std::size_t i, std::size_t j) {
    return d.product(i, j).to_string() + (d.unique(i, j) ? "*" : " ");
  };
  std::size_t width = 4;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) width = std::max(width, cell(i, j).size() + 1);
  std::size_t label = std::to_string(p).size() + 2;

  auto pad_left = [](std::string s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
  std::ostringstream out;
  out << std::string(label, ' ');
  for (std::size_t j = 0; j < p; ++j) out << pad_left("x" + std::to_string(j + 1) + " ", width);
  out << "\n";
  for (std::size_t i = 0; i < p; ++i) {
    out << pad_left("x" + std::to_string(i + 1), label - 1) << " ";
    for (std::size_t j = 0; j < p; ++j) out << (j < i ? std::string(width, ' ') : pad_left(cell(i, j), width));
    out << "\n";
  }
  out << "support: ";
  for (std::size_t i = 0; i < p; ++i) out << (i ? ", " : "") << "x" << i + 1 << " = " << d.support()[i].to_string();
  out << "\n" << d.size() << " distinct products, * = uniquely represented\n";
  for (const auto& e : d.entries()) {
    if (e.unique()) continue;
    out << e.value.to_string() << ":";
    for (std::size_t k = 0; k < e.pairs.size(); ++k)
      out << (k ? " =" : "") << " x" << e.pairs[k].i + 1 << "*x" << e.pairs[k].j + 1;
    out << "\n";
  }
  return out.str();
}

}  // namespace alsq
