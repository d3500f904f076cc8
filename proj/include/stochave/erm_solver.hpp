#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "stochave/problem.hpp"

namespace stochave {

/// Parameters of the smoothing gradient method.
struct SolverConfig {
  double rho_backtrack = 0.5;  ///< Armijo step shrink factor
  double sigma = 0.5;          ///< smoothing parameter shrink factor
  double delta = 0.5;          ///< Armijo sufficient-decrease fraction
  double mu0 = 0.01;
  double gamma_bar = 0.5;  ///< mu is shrunk once ||grad|| < gamma_bar * mu
  double epsilon = 1e-5;   ///< gradient-norm stopping tolerance
  int max_iter = 10000;
  int max_backtracks = 60;

  /// Throws InvalidArgument if any parameter is outside its interval.
  void validate() const;
};

enum class SolveStatus { Converged, IterationCap, LineSearchFailure };

std::string_view to_string(SolveStatus status);

/// One row of the convergence trace.
struct Iterate {
  int k = 0;
  Vector x;
  double objective = 0.0;             ///< smoothed objective at (x, mu)
  double objective_unsmoothed = 0.0;  ///< objective at (x, 0)
  double grad_norm = 0.0;
  double mu = 0.0;
  double step = 0.0;  ///< step that produced x; 0 for the starting point
};

struct SolveReport {
  Vector x_final;
  double f_final = 0.0;           ///< unsmoothed objective at x_final
  double f_smoothed_final = 0.0;  ///< smoothed objective at (x_final, mu_final)
  double grad_norm_final = 0.0;
  double mu_final = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationCap;
  std::vector<Iterate> trace;
};

/// A family of smooth functions f~(., mu) converging to a nonsmooth f as mu -> 0.
class SmoothedObjective {
 public:
  virtual ~SmoothedObjective() = default;
  virtual Index dimension() const = 0;
  virtual double value(const Vector& x, double mu) const = 0;
  virtual Vector gradient(const Vector& x, double mu) const = 0;
  virtual double unsmoothed_value(const Vector& x) const { return value(x, 0.0); }
};

/// Sample-average squared residual of a stochastic problem. Holds references;
/// both arguments must outlive the objective.
class ErmObjective final : public SmoothedObjective {
 public:
  ErmObjective(const StochasticProblem& problem, const SampleSet& samples);

  Index dimension() const override { return problem_.n(); }
  double value(const Vector& x, double mu) const override;
  Vector gradient(const Vector& x, double mu) const override;
  double unsmoothed_value(const Vector& x) const override;

 private:
  const StochasticProblem& problem_;
  const SampleSet& samples_;
};

struct LineSearchResult {
  double alpha = 0.0;
  Vector x_new;
  double f_new = 0.0;
  int backtracks = 0;  ///< j in alpha = rho^j
};

/// Backtracking Armijo search: the largest alpha = rho^j, j <= max_backtracks, with
///
///   f~(x + alpha d, mu) - f~(x, mu) <= delta * alpha * grad^T d.
///
/// Returns nullopt when no such j exists. d must be a descent direction.
std::optional<LineSearchResult> armijo_search(const SmoothedObjective& objective, const Vector& x,
                                              const Vector& d, double mu, const SolverConfig& cfg);

std::optional<LineSearchResult> armijo_search(const StochasticProblem& problem,
                                              const SampleSet& samples, const Vector& x,
                                              const Vector& d, double mu, const SolverConfig& cfg);

/// Smoothing gradient method: steepest descent on f~(., mu_k) with Armijo
/// steps; mu_k is multiplied by sigma whenever the gradient at the new iterate
/// (still at mu_k) drops below gamma_bar * mu_k. Stops once ||grad|| <= epsilon
/// or after max_iter steps.
SolveReport minimize(const SmoothedObjective& objective, const Vector& x0, const SolverConfig& cfg);

SolveReport solve(const StochasticProblem& problem, const SampleSet& samples, const Vector& x0,
                  const SolverConfig& cfg);

}  // namespace stochave
