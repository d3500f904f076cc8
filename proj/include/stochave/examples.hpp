#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stochave/problem.hpp"

namespace stochave {

/// Built-in instances:
///   ex2_1     4x4, omega in {0, 2} with probability 1/2 each
///   ex4_1     2x2, omega ~ U[0,1]
///   ex4_2     4x4, omega ~ U[0,1]
///   ex4_3     10x10 dense with fractional entries, omega ~ U[0,1]
///   ex4_4     n x n tridiagonal (n >= 2), omega ~ U[0,1]
/// All are A(omega) = A_0 + omega I with a scalar omega.
StochasticProblem builtin_example(std::string_view id, Index n = 100);

const std::vector<std::string>& builtin_example_ids();

/// Sample count and starting point of one row of a reference results table.
struct ReferenceRun {
  std::size_t N = 0;
  Vector x0;
};

/// Reference rows with listed starting points (ex2_1, ex4_1, ex4_2); empty for
/// examples whose reference runs used random starts.
std::vector<ReferenceRun> reference_runs(std::string_view id);

}  // namespace stochave
