#include "stochave/erm_solver.hpp"

#include <cmath>

namespace stochave {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

void SolverConfig::validate() const {
  if (!in_open_unit(rho_backtrack)) throw InvalidArgument("rho_backtrack must lie in (0,1)");
  if (!in_open_unit(sigma)) throw InvalidArgument("sigma must lie in (0,1)");
  if (!in_open_unit(delta)) throw InvalidArgument("delta must lie in (0,1)");
  if (!in_open_unit(gamma_bar)) throw InvalidArgument("gamma_bar must lie in (0,1)");
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) throw InvalidArgument("mu0 must be > 0");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (max_backtracks < 1) throw InvalidArgument("max_backtracks must be >= 1");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationCap: return "iteration_cap";
    case SolveStatus::LineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

ErmObjective::ErmObjective(const StochasticProblem& problem, const SampleSet& samples)
    : problem_(problem), samples_(samples) {}

double ErmObjective::value(const Vector& x, double mu) const {
  return smoothed_objective(problem_, samples_, x, mu);
}

Vector ErmObjective::gradient(const Vector& x, double mu) const {
  return smoothed_gradient(problem_, samples_, x, mu);
}

double ErmObjective::unsmoothed_value(const Vector& x) const {
  return erm_objective(problem_, samples_, x);
}

namespace {

std::optional<LineSearchResult> backtrack(const SmoothedObjective& objective, const Vector& x,
                                          double f_x, double slope, const Vector& d, double mu,
                                          const SolverConfig& cfg) {
  double alpha = 1.0;
  for (int j = 0; j <= cfg.max_backtracks; ++j) {
    Vector trial = x + alpha * d;
    const double f_trial = objective.value(trial, mu);
    if (f_trial - f_x <= cfg.delta * alpha * slope) return LineSearchResult{alpha, std::move(trial), f_trial, j};
    alpha *= cfg.rho_backtrack;
  }
  return std::nullopt;
}

}  // namespace

std::optional<LineSearchResult> armijo_search(const SmoothedObjective& objective, const Vector& x,
                                              const Vector& d, double mu, const SolverConfig& cfg) {
  cfg.validate();
  if (x.size() != objective.dimension() || d.size() != objective.dimension())
    throw InvalidArgument("line search vectors do not match the objective dimension");
  const double slope = objective.gradient(x, mu).dot(d);
  if (!(slope < 0.0)) throw InvalidArgument("search direction is not a descent direction");
  return backtrack(objective, x, objective.value(x, mu), slope, d, mu, cfg);
}

std::optional<LineSearchResult> armijo_search(const StochasticProblem& problem,
                                              const SampleSet& samples, const Vector& x,
                                              const Vector& d, double mu, const SolverConfig& cfg) {
  return armijo_search(ErmObjective(problem, samples), x, d, mu, cfg);
}

SolveReport minimize(const SmoothedObjective& objective, const Vector& x0, const SolverConfig& cfg) {
  cfg.validate();
  if (x0.size() != objective.dimension())
    throw InvalidArgument("starting point does not match the objective dimension");
  if (!x0.allFinite()) throw InvalidArgument("starting point must be finite");

  SolveReport report;
  Vector x = x0;
  double mu = cfg.mu0;
  double f = objective.value(x, mu);
  Vector g = objective.gradient(x, mu);
  if (!std::isfinite(f) || !g.allFinite())
    throw InvalidArgument("objective or gradient is not finite at the starting point");

  double step = 0.0;
  for (int k = 0;; ++k) {
    const double grad_norm = g.norm();
    report.trace.push_back(Iterate{k, x, f, objective.unsmoothed_value(x), grad_norm, mu, step});
    report.iterations = k;

    if (grad_norm <= cfg.epsilon) {
      report.status = SolveStatus::Converged;
      break;
    }
    if (k >= cfg.max_iter) {
      report.status = SolveStatus::IterationCap;
      break;
    }

    const Vector d = -g;
    auto accepted = backtrack(objective, x, f, -g.squaredNorm(), d, mu, cfg);
    if (!accepted) {
      report.status = SolveStatus::LineSearchFailure;
      break;
    }
    x = std::move(accepted->x_new);
    step = accepted->alpha;

    // mu update tested at the new iterate with the old mu.
    Vector g_new = objective.gradient(x, mu);
    if (g_new.norm() < cfg.gamma_bar * mu) {
      mu *= cfg.sigma;
      f = objective.value(x, mu);
      g = objective.gradient(x, mu);
    } else {
      f = accepted->f_new;
      g = std::move(g_new);
    }
  }

  const Iterate& last = report.trace.back();
  report.x_final = last.x;
  report.f_final = last.objective_unsmoothed;
  report.f_smoothed_final = last.objective;
  report.grad_norm_final = last.grad_norm;
  report.mu_final = last.mu;
  return report;
}

SolveReport solve(const StochasticProblem& problem, const SampleSet& samples, const Vector& x0,
                  const SolverConfig& cfg) {
  if (x0.size() != problem.n()) throw InvalidArgument("starting point does not match problem dimension");
  return minimize(ErmObjective(problem, samples), x0, cfg);
}

}  // namespace stochave
