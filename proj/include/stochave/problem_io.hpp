#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stochave/analytic.hpp"
#include "stochave/erm_solver.hpp"
#include "stochave/problem.hpp"
#include "stochave/sampling.hpp"

namespace stochave {

/// Malformed problem or oracle file. The message names the offending field
/// (e.g. "A_terms[0][1]") or, for JSON syntax errors, the line and column.
class ProblemFileError : public InvalidArgument {
 public:
  explicit ProblemFileError(const std::string& what) : InvalidArgument(what) {}
};

/// JSON problem document:
///
///   {
///     "n": 2, "m": 1,
///     "A_base": [[2, 1], [5, 1]],
///     "A_terms": [[[1, 0], [0, 1]]],
///     "b_base": [4, 5],
///     "b_terms": [[1, 3]],
///     "distribution": {"kind": "uniform_box"},
///     "solver": {"mu0": 0.01, "epsilon": 1e-5, ...},                 optional
///     "sampler": {"kind": "halton", "count": 100, "offset": 0}       optional
///   }
///
/// Finite distributions use {"kind": "finite_scenarios", "scenarios":
/// [{"omega": [0], "p": 0.5}, ...]}. Sampler kinds are "halton" (offset),
/// "pseudo_random" (seed) and "scenarios".
struct ProblemFile {
  StochasticProblem problem;
  std::optional<SolverConfig> solver;
  std::optional<SamplerSpec> sampler;
};

ProblemFile parse_problem_file(std::string_view text);
ProblemFile load_problem_file(const std::filesystem::path& path);
std::string serialize_problem_file(const ProblemFile& file);

/// {"A": [[...]], "b_tilde": [...], "T": [[...]]}
CaseTwoInstance parse_case2_file(std::string_view text);
CaseTwoInstance load_case2_file(const std::filesystem::path& path);

}  // namespace stochave
