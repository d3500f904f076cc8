#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stochave/problem.hpp"

namespace stochave {

/// Constant A and b(w) = b~ + T w with w uniform on [0,1]^m, where each row of
/// T has exactly one positive entry. The expected squared residual then has
/// the closed form sum_i (r_i^2 + t_i^2 / 3 - r_i t_i), r = A x - |x| - b~.
class CaseTwoInstance {
 public:
  CaseTwoInstance(Matrix A, Vector b_tilde, Matrix T);

  Index n() const { return A_.rows(); }
  Index m() const { return T_.cols(); }
  const Matrix& A() const { return A_; }
  const Vector& b_tilde() const { return b_tilde_; }
  const Matrix& T() const { return T_; }
  /// Positive entry of each row of T.
  const Vector& t() const { return t_; }

  /// The same instance as a general problem (A_j = 0, b_j = column j of T).
  StochasticProblem to_problem() const;

 private:
  Matrix A_;
  Vector b_tilde_;
  Matrix T_;
  Vector t_;
};

double case2_objective(const CaseTwoInstance& inst, const Vector& x);

using ScalarField = std::function<double(const Vector&)>;

/// Central differences (f(x + h e_j) - f(x - h e_j)) / 2h.
Vector fd_gradient(const ScalarField& objective, const Vector& x, double h = 1e-6);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct GridResult {
  Vector x_best;
  double f_best = 0.0;
};

/// Exhaustive search on the lattice lo + (hi - lo) i / (steps - 1) per
/// coordinate, at most 3 coordinates. Ties keep the lexicographically first
/// index tuple (first coordinate most significant).
GridResult grid_search(const ScalarField& objective, std::span<const Interval> box, int steps_per_dim);

}  // namespace stochave
