#pragma once

#include <variant>
#include <vector>

#include "stochave/types.hpp"

namespace stochave {

/// omega uniform on the unit hypercube [0,1]^m, density 1.
struct UniformBox {};

struct Scenario {
  Vector omega;
  double probability = 0.0;
};

/// Finite discrete distribution; probabilities positive and summing to one.
struct FiniteScenarios {
  std::vector<Scenario> scenarios;
};

using Distribution = std::variant<UniformBox, FiniteScenarios>;

/// Stochastic absolute value equation A(w) x - |x| = b(w) with data affine in w:
///
///   A(w) = A_0 + sum_j w_j A_j,   b(w) = b_0 + sum_j w_j b_j.
///
/// The constructor validates every shape and the scenario probabilities.
class StochasticProblem {
 public:
  StochasticProblem(Matrix a_base, std::vector<Matrix> a_terms, Vector b_base,
                    std::vector<Vector> b_terms, Distribution distribution = UniformBox{});

  Index n() const { return a_base_.rows(); }
  Index m() const { return static_cast<Index>(a_terms_.size()); }

  const Matrix& a_base() const { return a_base_; }
  const std::vector<Matrix>& a_terms() const { return a_terms_; }
  const Vector& b_base() const { return b_base_; }
  const std::vector<Vector>& b_terms() const { return b_terms_; }
  const Distribution& distribution() const { return distribution_; }

  bool is_uniform_box() const { return std::holds_alternative<UniformBox>(distribution_); }
  /// Throws InvalidArgument for a uniform-box problem.
  const FiniteScenarios& scenarios() const;

 private:
  Matrix a_base_;
  std::vector<Matrix> a_terms_;
  Vector b_base_;
  std::vector<Vector> b_terms_;
  Distribution distribution_;
};

/// Weighted observation set. Weights carry the density at each point: 1 for
/// uniform-box samples, N * p_i for the scenarios of a finite distribution,
/// so that (1/N) sum_i w_i g(w_i) is the expectation estimate in both cases.
class SampleSet {
 public:
  SampleSet(std::vector<Vector> points, std::vector<double> weights);
  /// Unit weights.
  explicit SampleSet(std::vector<Vector> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Vector>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Vector> points_;
  std::vector<double> weights_;
};

Matrix eval_A(const StochasticProblem& problem, const Vector& omega);
Vector eval_b(const StochasticProblem& problem, const Vector& omega);

/// A(w) x - |x| - b(w).
Vector residual(const StochasticProblem& problem, const Vector& x, const Vector& omega);

/// sqrt(t^2 + mu); equals |t| at mu = 0.
double smooth_abs(double t, double mu);

double erm_objective(const StochasticProblem& problem, const SampleSet& samples, const Vector& x);

double smoothed_objective(const StochasticProblem& problem, const SampleSet& samples,
                          const Vector& x, double mu);

/// Jacobian of A(w) x - psi(x, mu) - b(w), i.e. A(w) - diag(x_j / sqrt(x_j^2 + mu)).
Matrix smoothed_jacobian(const StochasticProblem& problem, const Vector& x, const Vector& omega,
                         double mu);

/// Exact gradient of smoothed_objective. The per-sample sum of J_i^T r_i is
/// folded through the affine structure, so the cost is (m+1) dense
/// mat-vecs plus O(N n m) regardless of the sample count.
Vector smoothed_gradient(const StochasticProblem& problem, const SampleSet& samples,
                         const Vector& x, double mu);

}  // namespace stochave
