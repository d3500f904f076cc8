#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "stochave/erm_solver.hpp"
#include "stochave/sampling.hpp"

namespace stochave {

enum class Route { Erm, Ev };

std::string_view to_string(Route route);

struct GivenStart {
  Vector x;
};

/// x0 drawn uniformly from [lo, hi]^n with mt19937_64(seed).
struct UniformRandomStart {
  double lo = 0.0;
  double hi = 2.0;
  std::uint64_t seed = 0;
};

using StartPolicy = std::variant<GivenStart, UniformRandomStart>;

Vector starting_point(const StartPolicy& policy, Index n);

/// One row of a results table.
struct RunRecord {
  std::string example;
  Route route = Route::Erm;
  std::size_t N = 0;     ///< sample count (scenario count for the EV route)
  std::string sampler;   ///< e.g. "halton(offset=0)", "pseudo_random(seed=7)"
  Vector x0;
  Vector x_star;
  double f_star = 0.0;      ///< ERM objective, or 1/2 ||H~||^2 for the EV route
  double f_smoothed = 0.0;  ///< smoothed objective at mu_final
  double grad_norm = 0.0;
  double mu_final = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationCap;
  double wall_seconds = 0.0;
  /// EV route on a uniform-box problem: expectations only, no scenario blocks.
  bool ev_uniform_extension = false;
};

struct RunResult {
  RunRecord record;
  SolveReport report;
};

/// Draws the samples (ERM) or builds the expected-value instance (EV), picks
/// x0 and solves. The result depends only on the arguments; wall_seconds is the
/// only non-reproducible field.
RunResult run_experiment(const StochasticProblem& problem, const SamplerSpec& sampler,
                         const SolverConfig& cfg, const StartPolicy& start, Route route,
                         std::string label = {});

std::string describe(const SamplerSpec& spec);

}  // namespace stochave
