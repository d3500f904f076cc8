#include "stochave/ev_formulation.hpp"

#include <cmath>

namespace stochave {

namespace {

void check_mu(double mu) {
  if (!(mu >= 0.0)) throw InvalidArgument("smoothing parameter mu must be >= 0");
}

void check_x(const EvInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) throw InvalidArgument("x does not match the EV instance dimension");
}

}  // namespace

double fb(double a, double b) { return std::hypot(a, b) - a - b; }

double smoothed_fb(double a, double b, double mu) {
  check_mu(mu);
  if (mu == 0.0) return fb(a, b);
  return std::sqrt(a * a + b * b + mu) - a - b;
}

EvInstance expected_instance(const StochasticProblem& problem) {
  EvInstance inst;
  if (problem.is_uniform_box()) {
    inst.A_bar = eval_A(problem, Vector::Constant(problem.m(), 0.5));
    inst.b_bar = eval_b(problem, Vector::Constant(problem.m(), 0.5));
    return inst;
  }
  const Index n = problem.n();
  inst.A_bar = Matrix::Zero(n, n);
  inst.b_bar = Vector::Zero(n);
  for (const auto& s : problem.scenarios().scenarios) {
    ScenarioBlock block{eval_A(problem, s.omega), eval_b(problem, s.omega)};
    inst.A_bar += s.probability * block.A;
    inst.b_bar += s.probability * block.b;
    inst.scenarios.push_back(std::move(block));
  }
  return inst;
}

Vector scenario_constraints(const EvInstance& inst, const Vector& x) {
  check_x(inst, x);
  const Index n = inst.n();
  Vector c(2 * n * Index(inst.scenarios.size()));
  Index row = 0;
  for (const auto& s : inst.scenarios) {
    const Vector ax_b = s.A * x - s.b;
    c.segment(row, n) = ax_b + x;
    c.segment(row + n, n) = ax_b - x;
    row += 2 * n;
  }
  return c;
}

Vector fb_residual(const EvInstance& inst, const Vector& x, double mu) {
  check_x(inst, x);
  check_mu(mu);
  const Vector ax_b = inst.A_bar * x - inst.b_bar;
  Vector phi(inst.n());
  for (Index i = 0; i < inst.n(); ++i) phi[i] = smoothed_fb(ax_b[i] + x[i], ax_b[i] - x[i], mu);
  return phi;
}

Vector ev_system(const EvInstance& inst, const Vector& x, const Vector& y) {
  const Vector c = scenario_constraints(inst, x);
  if (y.size() != c.size()) throw InvalidArgument("slack vector y has the wrong length");
  Vector h(inst.n() + c.size());
  h << fb_residual(inst, x, 0.0), c - y;
  return h;
}

Vector optimal_slack(const EvInstance& inst, const Vector& x) {
  return scenario_constraints(inst, x).cwiseMax(0.0);
}

double ev_objective(const EvInstance& inst, const Vector& x, double mu) {
  check_x(inst, x);
  return EvObjective(inst).value(x, mu);
}

Vector ev_gradient(const EvInstance& inst, const Vector& x, double mu) {
  check_x(inst, x);
  return EvObjective(inst).gradient(x, mu);
}

EvObjective::EvObjective(const EvInstance& inst) : b_bar_(inst.b_bar) {
  const Index n = inst.n();
  if (inst.A_bar.cols() != n || inst.b_bar.size() != n)
    throw InvalidArgument("EV instance has inconsistent shapes");
  const Matrix id = Matrix::Identity(n, n);
  a_plus_ = inst.A_bar + id;
  a_minus_ = inst.A_bar - id;
  const Index rows = 2 * n * Index(inst.scenarios.size());
  constraints_.resize(rows, n);
  offsets_.resize(rows);
  Index row = 0;
  for (const auto& s : inst.scenarios) {
    if (s.A.rows() != n || s.A.cols() != n || s.b.size() != n)
      throw InvalidArgument("EV scenario block has inconsistent shapes");
    constraints_.middleRows(row, n) = s.A + id;
    constraints_.middleRows(row + n, n) = s.A - id;
    offsets_.segment(row, n) = s.b;
    offsets_.segment(row + n, n) = s.b;
    row += 2 * n;
  }
}

double EvObjective::value(const Vector& x, double mu) const {
  check_mu(mu);
  const Vector g = a_plus_ * x - b_bar_;
  const Vector h = a_minus_ * x - b_bar_;
  double sum = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    const double phi = smoothed_fb(g[i], h[i], mu);
    sum += phi * phi;
  }
  if (constraints_.rows() > 0) sum += (constraints_ * x - offsets_).cwiseMin(0.0).squaredNorm();
  return 0.5 * sum;
}

Vector EvObjective::gradient(const Vector& x, double mu) const {
  check_mu(mu);
  const Vector g = a_plus_ * x - b_bar_;
  const Vector h = a_minus_ * x - b_bar_;
  // d phi_i = (g_i / s_i - 1) dg_i + (h_i / s_i - 1) dh_i, s_i = sqrt(g^2 + h^2 + mu).
  Vector wg(g.size());
  Vector wh(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double s = std::sqrt(g[i] * g[i] + h[i] * h[i] + mu);
    if (s == 0.0) throw NonsmoothPoint("FB function is not differentiable at (0, 0) with mu = 0");
    const double phi = s - g[i] - h[i];
    wg[i] = (g[i] / s - 1.0) * phi;
    wh[i] = (h[i] / s - 1.0) * phi;
  }
  Vector grad = a_plus_.transpose() * wg + a_minus_.transpose() * wh;
  if (constraints_.rows() > 0)
    grad.noalias() += constraints_.transpose() * (constraints_ * x - offsets_).cwiseMin(0.0);
  return grad;
}

SolveReport ev_solve(const EvInstance& inst, const Vector& x0, const SolverConfig& cfg) {
  if (x0.size() != inst.n()) throw InvalidArgument("starting point does not match the EV instance");
  return minimize(EvObjective(inst), x0, cfg);
}

bool verify_glcp(const Matrix& A, const Vector& b, const Vector& x, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be > 0");
  if (A.rows() != A.cols() || A.rows() != b.size() || b.size() != x.size())
    throw InvalidArgument("verify_glcp: inconsistent shapes");
  const Vector ax_b = A * x - b;
  const Vector plus = ax_b + x;
  const Vector minus = ax_b - x;
  return plus.minCoeff() >= -tol && minus.minCoeff() >= -tol && std::abs(plus.dot(minus)) <= tol;
}

bool verify_save(const StochasticProblem& problem, const Vector& x, const Vector& omega, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be > 0");
  return residual(problem, x, omega).norm() <= tol;
}

}  // namespace stochave
