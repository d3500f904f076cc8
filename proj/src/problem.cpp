#include "stochave/problem.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace stochave {

namespace {

constexpr double kProbabilityTolerance = 1e-12;

void check_omega(const StochasticProblem& problem, const Vector& omega) {
  if (omega.size() != problem.m()) {
    std::ostringstream msg;
    msg << "omega has length " << omega.size() << ", problem expects " << problem.m();
    throw InvalidArgument(msg.str());
  }
}

void check_x(const StochasticProblem& problem, const Vector& x) {
  if (x.size() != problem.n()) {
    std::ostringstream msg;
    msg << "x has length " << x.size() << ", problem expects " << problem.n();
    throw InvalidArgument(msg.str());
  }
}

void check_mu(double mu) {
  if (!(mu >= 0.0)) throw InvalidArgument("smoothing parameter mu must be >= 0");
}

void check_samples(const StochasticProblem& problem, const SampleSet& samples) {
  if (samples.size() == 0) throw InvalidArgument("empty sample set");
  for (const auto& p : samples.points()) check_omega(problem, p);
}

Vector smooth_abs(const Vector& x, double mu) {
  return x.unaryExpr([mu](double t) { return std::sqrt(t * t + mu); });
}

// Residual pieces at fixed x: r(w) = base + sum_j w_j terms[j].
struct AffineResidual {
  Vector base;
  std::vector<Vector> terms;

  AffineResidual(const StochasticProblem& problem, const Vector& x, const Vector& abs_x)
      : base(problem.a_base() * x - abs_x - problem.b_base()) {
    terms.reserve(problem.a_terms().size());
    for (std::size_t j = 0; j < problem.a_terms().size(); ++j)
      terms.push_back(problem.a_terms()[j] * x - problem.b_terms()[j]);
  }

  void at(const Vector& omega, Vector& out) const {
    out = base;
    for (std::size_t j = 0; j < terms.size(); ++j) out.noalias() += omega[Index(j)] * terms[j];
  }
};

double weighted_mean_square(const StochasticProblem& problem, const SampleSet& samples,
                            const AffineResidual& parts) {
  Vector r(problem.n());
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    parts.at(samples.points()[i], r);
    sum += samples.weights()[i] * r.squaredNorm();
  }
  return sum / static_cast<double>(samples.size());
}

}  // namespace

StochasticProblem::StochasticProblem(Matrix a_base, std::vector<Matrix> a_terms, Vector b_base,
                                     std::vector<Vector> b_terms, Distribution distribution)
    : a_base_(std::move(a_base)),
      a_terms_(std::move(a_terms)),
      b_base_(std::move(b_base)),
      b_terms_(std::move(b_terms)),
      distribution_(std::move(distribution)) {
  const Index n = a_base_.rows();
  if (n < 1 || a_base_.cols() != n) throw InvalidArgument("A_base must be a non-empty square matrix");
  if (b_base_.size() != n) throw InvalidArgument("b_base length does not match A_base");
  if (b_terms_.size() != a_terms_.size())
    throw InvalidArgument("A_terms and b_terms must have the same number of elements");
  for (std::size_t j = 0; j < a_terms_.size(); ++j) {
    if (a_terms_[j].rows() != n || a_terms_[j].cols() != n) {
      std::ostringstream msg;
      msg << "A_terms[" << j << "] must be " << n << "x" << n;
      throw InvalidArgument(msg.str());
    }
    if (b_terms_[j].size() != n) {
      std::ostringstream msg;
      msg << "b_terms[" << j << "] must have length " << n;
      throw InvalidArgument(msg.str());
    }
  }
  if (const auto* fs = std::get_if<FiniteScenarios>(&distribution_)) {
    if (fs->scenarios.empty()) throw InvalidArgument("finite distribution has no scenarios");
    double total = 0.0;
    for (std::size_t i = 0; i < fs->scenarios.size(); ++i) {
      const auto& s = fs->scenarios[i];
      if (s.omega.size() != m()) {
        std::ostringstream msg;
        msg << "scenario " << i << " omega has length " << s.omega.size() << ", expected " << m();
        throw InvalidArgument(msg.str());
      }
      if (!(s.probability > 0.0)) {
        std::ostringstream msg;
        msg << "scenario " << i << " probability must be > 0";
        throw InvalidArgument(msg.str());
      }
      total += s.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance)
      throw InvalidArgument("scenario probabilities must sum to 1");
  }
}

const FiniteScenarios& StochasticProblem::scenarios() const {
  const auto* fs = std::get_if<FiniteScenarios>(&distribution_);
  if (fs == nullptr) throw InvalidArgument("problem has a uniform-box distribution, not scenarios");
  return *fs;
}

SampleSet::SampleSet(std::vector<Vector> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw InvalidArgument("sample set must contain at least one point");
  if (weights_.size() != points_.size())
    throw InvalidArgument("sample set needs one weight per point");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("sample weights must be positive");
}

SampleSet::SampleSet(std::vector<Vector> points)
    : SampleSet(points, std::vector<double>(points.size(), 1.0)) {}

Matrix eval_A(const StochasticProblem& problem, const Vector& omega) {
  check_omega(problem, omega);
  Matrix a = problem.a_base();
  for (Index j = 0; j < problem.m(); ++j) a += omega[j] * problem.a_terms()[std::size_t(j)];
  return a;
}

Vector eval_b(const StochasticProblem& problem, const Vector& omega) {
  check_omega(problem, omega);
  Vector b = problem.b_base();
  for (Index j = 0; j < problem.m(); ++j) b += omega[j] * problem.b_terms()[std::size_t(j)];
  return b;
}

Vector residual(const StochasticProblem& problem, const Vector& x, const Vector& omega) {
  check_x(problem, x);
  return eval_A(problem, omega) * x - x.cwiseAbs() - eval_b(problem, omega);
}

double smooth_abs(double t, double mu) {
  check_mu(mu);
  return std::sqrt(t * t + mu);
}

double erm_objective(const StochasticProblem& problem, const SampleSet& samples, const Vector& x) {
  check_x(problem, x);
  check_samples(problem, samples);
  return weighted_mean_square(problem, samples, AffineResidual(problem, x, x.cwiseAbs()));
}

double smoothed_objective(const StochasticProblem& problem, const SampleSet& samples,
                          const Vector& x, double mu) {
  check_x(problem, x);
  check_mu(mu);
  check_samples(problem, samples);
  return weighted_mean_square(problem, samples, AffineResidual(problem, x, smooth_abs(x, mu)));
}

Matrix smoothed_jacobian(const StochasticProblem& problem, const Vector& x, const Vector& omega,
                         double mu) {
  check_x(problem, x);
  check_mu(mu);
  Matrix jac = eval_A(problem, omega);
  for (Index j = 0; j < x.size(); ++j) {
    if (mu == 0.0 && x[j] == 0.0) throw NonsmoothPoint("|x| is not differentiable at x_j = 0 with mu = 0");
    jac(j, j) -= x[j] / std::sqrt(x[j] * x[j] + mu);
  }
  return jac;
}

Vector smoothed_gradient(const StochasticProblem& problem, const SampleSet& samples,
                         const Vector& x, double mu) {
  check_x(problem, x);
  check_mu(mu);
  check_samples(problem, samples);
  if (mu == 0.0 && (x.array() == 0.0).any())
    throw NonsmoothPoint("|x| is not differentiable at x_j = 0 with mu = 0");

  const Vector psi = smooth_abs(x, mu);
  const AffineResidual parts(problem, x, psi);

  // sum_i w_i J_i^T r_i = A_0^T s_0 + sum_j A_j^T s_j - D s_0
  // with s_0 = sum_i w_i r_i and s_j = sum_i w_i w_ij r_i.
  Vector s0 = Vector::Zero(problem.n());
  std::vector<Vector> sj(std::size_t(problem.m()), Vector::Zero(problem.n()));
  Vector r(problem.n());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& omega = samples.points()[i];
    const double w = samples.weights()[i];
    parts.at(omega, r);
    s0.noalias() += w * r;
    for (Index j = 0; j < problem.m(); ++j) sj[std::size_t(j)].noalias() += (w * omega[j]) * r;
  }

  Vector g = problem.a_base().transpose() * s0;
  for (Index j = 0; j < problem.m(); ++j)
    g.noalias() += problem.a_terms()[std::size_t(j)].transpose() * sj[std::size_t(j)];
  g -= x.cwiseQuotient(psi).cwiseProduct(s0);
  return (2.0 / static_cast<double>(samples.size())) * g;
}

}  // namespace stochave
