#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cilab/table.hpp"

namespace cilab {

/// Worst observed case of one property over its randomized trials.
struct PropertyResult {
  std::string module;
  std::string property;
  std::string inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  std::uint64_t seed = 0;

  bool all_passed() const;
  /// Columns: module, property, passed, residual, tolerance, inputs.
  Table to_table() const;
};

/// Suite names: one per module plus "all".
const std::vector<std::string>& verify_suites();

/// Runs the invariant properties of `suite`; every property draws from its own stream derived from
/// `seed`, so a suite run alone reproduces its rows from "all".
VerifyReport run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace cilab
