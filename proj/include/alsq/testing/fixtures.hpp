#pragma once

#include "alsq/measure.hpp"

#include <string>
#include <utility>
#include <vector>

namespace alsq::testing {

inline AtomicMeasure<Surd> exact_measure(const std::vector<std::pair<std::string, std::string>>& atoms) {
  std::vector<Atom<Surd>> out;
  for (const auto& [x, w] : atoms) out.push_back({Position::parse(x), Surd::parse(w)});
  return AtomicMeasure<Surd>::from_atoms(std::move(out));
}

/// Five atoms on 1, 2, 4, 8, 16; smallest possible product set.
inline AtomicMeasure<Surd> powers_of_two_example() {
  return exact_measure({{"1", "1/8"},
                        {"2", "(sqrt(2)-1)/2"},
                        {"4", "(7-4*sqrt(2))/4"},
                        {"8", "(sqrt(2)-1)/2"},
                        {"16", "1/8"}});
}

inline AtomicMeasure<Surd> powers_of_two_root() {
  return exact_measure({{"1", "sqrt(2)/4"}, {"2", "(2-sqrt(2))/2"}, {"4", "sqrt(2)/4"}});
}

/// Six atoms on 1, 3, 6, 9, 18, 36; largest possible product set.
inline AtomicMeasure<Surd> six_atom_example() {
  return exact_measure({{"1", "1/4"}, {"3", "1/3"}, {"6", "1/6"}, {"9", "1/9"}, {"18", "1/9"}, {"36", "1/36"}});
}

inline AtomicMeasure<Surd> six_atom_root() { return exact_measure({{"1", "1/2"}, {"3", "1/3"}, {"6", "1/6"}}); }

}  // namespace alsq::testing
