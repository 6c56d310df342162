#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abscompat/algebra.hpp"
#include "abscompat/tolerance.hpp"

namespace abscompat {

struct SuiteConfig {
  std::vector<int> dims;
  int trials = 200;
  std::uint64_t seed = 0;
  ToleranceConfig tol = kDefaultTolerance;
};

/// Per-suite tally. `worst_defect` is the largest defect among checks that
/// were expected to hold, so it shows how much headroom the tolerance had.
struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t indeterminate = 0;
  double worst_defect = 0.0;
  std::vector<std::string> notes;

  bool ok() const;
};

/// Shapes exercised for a dims list: M_d for each d (the diagonal algebra
/// C^4 for d = 1), plus the direct sum of all dims when there is more than one.
std::vector<AlgebraShape> suite_shapes(const std::vector<int>& dims);

/// Runs every equivalence and preserver suite. Throws InvalidArgument on an
/// empty dims list, a dim < 1, or trials < 1.
std::vector<SuiteResult> run_verify_suite(const SuiteConfig& config);

}  // namespace abscompat
