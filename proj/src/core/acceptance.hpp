#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace freeinterp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  ///< 0 when the criterion has no runtime budget
};

struct AcceptanceOptions {
  bool quick = false;  ///< halves truncations and grid sizes
  std::uint64_t seed = 20240917;
  std::size_t grid_size = 4096;
  double aperture = 2.0;
  double tolerance = 1e-9;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Runs criteria 1..10 in order; the callback sees each result as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const CriterionCallback& on_result = {});

}  // namespace freeinterp
