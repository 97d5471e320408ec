// validation.hpp — the invariant suite behind `weyl-triplets validate`
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weyl {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // pass boundary
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 1);

}  // namespace weyl
