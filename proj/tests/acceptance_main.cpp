#include "alsq/testing/acceptance.hpp"

#include <iostream>

int main() {
  bool ok = true;
  alsq::testing::run_acceptance({}, [&](const alsq::testing::CriterionResult& r) {
    std::cout << alsq::testing::format_result(r) << std::endl;
    ok = ok && r.passed;
  });
  return ok ? 0 : 1;
}
