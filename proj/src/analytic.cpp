#include "stochave/analytic.hpp"

#include <sstream>

namespace stochave {

CaseTwoInstance::CaseTwoInstance(Matrix A, Vector b_tilde, Matrix T)
    : A_(std::move(A)), b_tilde_(std::move(b_tilde)), T_(std::move(T)) {
  const Index n = A_.rows();
  if (n < 1 || A_.cols() != n) throw InvalidArgument("A must be a non-empty square matrix");
  if (b_tilde_.size() != n) throw InvalidArgument("b_tilde length does not match A");
  if (T_.rows() != n || T_.cols() < 1) throw InvalidArgument("T must have n rows and at least one column");
  t_.resize(n);
  for (Index i = 0; i < n; ++i) {
    int positive = 0;
    for (Index j = 0; j < T_.cols(); ++j) {
      const double v = T_(i, j);
      if (v > 0.0) {
        ++positive;
        t_[i] = v;
      } else if (v != 0.0) {
        positive = -1;
        break;
      }
    }
    if (positive != 1) {
      std::ostringstream msg;
      msg << "row " << i << " of T must have exactly one positive entry and zeros elsewhere";
      throw InvalidArgument(msg.str());
    }
  }
}

StochasticProblem CaseTwoInstance::to_problem() const {
  std::vector<Matrix> a_terms(std::size_t(m()), Matrix::Zero(n(), n()));
  std::vector<Vector> b_terms;
  for (Index j = 0; j < m(); ++j) b_terms.push_back(T_.col(j));
  return StochasticProblem(A_, std::move(a_terms), b_tilde_, std::move(b_terms), UniformBox{});
}

double case2_objective(const CaseTwoInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) throw InvalidArgument("x does not match the instance dimension");
  const Vector r = inst.A() * x - x.cwiseAbs() - inst.b_tilde();
  const auto& t = inst.t();
  return (r.array().square() + t.array().square() / 3.0 - r.array() * t.array()).sum();
}

Vector fd_gradient(const ScalarField& objective, const Vector& x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be > 0");
  Vector g(x.size());
  Vector probe = x;
  for (Index j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = objective(probe);
    probe[j] = x[j] - h;
    const double down = objective(probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

GridResult grid_search(const ScalarField& objective, std::span<const Interval> box, int steps_per_dim) {
  const auto dims = box.size();
  if (dims < 1) throw InvalidArgument("grid search needs at least one coordinate");
  if (dims > 3) throw UnsupportedDimension("grid search supports at most 3 coordinates");
  if (steps_per_dim < 2) throw InvalidArgument("steps_per_dim must be >= 2");

  const double denom = steps_per_dim - 1;
  std::vector<int> idx(dims, 0);
  Vector x(static_cast<Index>(dims));
  GridResult best;
  bool first = true;
  for (;;) {
    for (std::size_t j = 0; j < dims; ++j)
      x[Index(j)] = box[j].lo + (box[j].hi - box[j].lo) * idx[j] / denom;
    const double f = objective(x);
    if (first || f < best.f_best) {
      best = GridResult{x, f};
      first = false;
    }
    // Odometer increment, last coordinate fastest.
    std::size_t j = dims;
    while (j > 0) {
      --j;
      if (++idx[j] < steps_per_dim) break;
      idx[j] = 0;
      if (j == 0) return best;
    }
  }
}

}  // namespace stochave
