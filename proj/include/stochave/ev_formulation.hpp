#pragma once

#include <vector>

#include "stochave/erm_solver.hpp"
#include "stochave/problem.hpp"

namespace stochave {

struct ScenarioBlock {
  Matrix A;
  Vector b;
};

/// Expected-value data: A_bar = E[A(w)], b_bar = E[b(w)], plus A(w_i), b(w_i)
/// per scenario for the feasibility blocks (A(w_i) +- I) x - b(w_i) >= 0.
struct EvInstance {
  Matrix A_bar;
  Vector b_bar;
  std::vector<ScenarioBlock> scenarios;

  Index n() const { return A_bar.rows(); }
};

/// Fischer-Burmeister function sqrt(a^2 + b^2) - a - b; zero iff a, b >= 0 and ab = 0.
double fb(double a, double b);

/// sqrt(a^2 + b^2 + mu) - a - b.
double smoothed_fb(double a, double b, double mu);

/// For finite scenarios the scenario-weighted means and one block per scenario.
/// For a uniform box, E[w_j] = 1/2 gives A_bar = A_0 + (1/2) sum_j A_j and no
/// scenario blocks.
EvInstance expected_instance(const StochasticProblem& problem);

/// Stacked scenario constraints c(x) = C x - e: for each scenario i the rows
/// (A_i + I) x - b_i followed by (A_i - I) x - b_i.
Vector scenario_constraints(const EvInstance& inst, const Vector& x);

/// Phi_mu(x): smoothed FB applied to ((A_bar + I) x - b_bar, (A_bar - I) x - b_bar).
Vector fb_residual(const EvInstance& inst, const Vector& x, double mu);

/// H~(x, y) = [Phi(x); c(x) - y] with the unsmoothed FB function.
Vector ev_system(const EvInstance& inst, const Vector& x, const Vector& y);

/// Minimizer of 1/2 ||H~(x, y)||^2 over y >= 0: y* = max(0, c(x)).
Vector optimal_slack(const EvInstance& inst, const Vector& x);

/// 1/2 ||Phi_mu(x)||^2 + 1/2 sum_rows min(0, c_row(x))^2, i.e. the partial
/// minimum over y >= 0 of 1/2 ||H~(x, y)||^2 (with Phi smoothed by mu).
double ev_objective(const EvInstance& inst, const Vector& x, double mu);

Vector ev_gradient(const EvInstance& inst, const Vector& x, double mu);

class EvObjective final : public SmoothedObjective {
 public:
  explicit EvObjective(const EvInstance& inst);

  Index dimension() const override { return a_plus_.rows(); }
  double value(const Vector& x, double mu) const override;
  Vector gradient(const Vector& x, double mu) const override;

 private:
  Matrix a_plus_;   // A_bar + I
  Matrix a_minus_;  // A_bar - I
  Vector b_bar_;
  Matrix constraints_;  // stacked (A_i +- I)
  Vector offsets_;      // stacked b_i
};

/// Minimizes ev_objective with the smoothing gradient method. f_final in the
/// report is 1/2 ||H~(x*, y*)||^2 with y* = optimal_slack(x*).
SolveReport ev_solve(const EvInstance& inst, const Vector& x0, const SolverConfig& cfg);

/// (A + I) x - b >= -tol, (A - I) x - b >= -tol and |inner product| <= tol.
bool verify_glcp(const Matrix& A, const Vector& b, const Vector& x, double tol);

/// ||A(w) x - |x| - b(w)|| <= tol.
bool verify_save(const StochasticProblem& problem, const Vector& x, const Vector& omega, double tol);

}  // namespace stochave
