#include <cmath>

#include "doctest.h"
#include "stochave/analytic.hpp"
#include "stochave/examples.hpp"
#include "stochave/sampling.hpp"
#include "test_support.hpp"

using namespace stochave;
using stochave::testing::Rng;

namespace {

Vector v(std::initializer_list<double> d) {
  Vector out(Index(d.size()));
  Index i = 0;
  for (double x : d) out[i++] = x;
  return out;
}

Vector scalar(double w) { return Vector::Constant(1, w); }

StochasticProblem one_dim(double a, double b) {
  return StochasticProblem(Matrix::Constant(1, 1, a), {}, Vector::Constant(1, b), {});
}

StochasticProblem random_problem(Rng& rng, Index n, Index m) {
  std::vector<Matrix> at;
  std::vector<Vector> bt;
  for (Index j = 0; j < m; ++j) {
    at.push_back(rng.matrix(n, n, -2, 2));
    bt.push_back(rng.vector(n, -2, 2));
  }
  return StochasticProblem(rng.matrix(n, n, -3, 3), at, rng.vector(n, -3, 3), bt);
}

}  // namespace

TEST_CASE("eval_A and eval_b on the 2x2 example") {
  const auto p = builtin_example("ex4_1");
  Matrix a0(2, 2);
  a0 << 2, 1, 5, 1;
  Matrix a1(2, 2);
  a1 << 3, 1, 5, 2;
  CHECK(eval_A(p, scalar(0.0)) == a0);
  CHECK(eval_A(p, scalar(1.0)) == a1);
  CHECK(eval_b(p, scalar(0.0)) == v({4, 5}));
  CHECK(eval_b(p, scalar(1.0)) == v({5, 8}));
}

TEST_CASE("m = 0 problem is deterministic") {
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const StochasticProblem p(a, {}, v({1, 1}), {});
  CHECK(p.m() == 0);
  CHECK(eval_A(p, Vector(0)) == a);
  CHECK(eval_b(p, Vector(0)) == v({1, 1}));
}

TEST_CASE("dimension mismatches are rejected") {
  const auto p = builtin_example("ex4_1");
  CHECK_THROWS_AS(eval_A(p, Vector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(eval_b(p, Vector::Zero(0)), InvalidArgument);
  CHECK_THROWS_AS(residual(p, Vector::Zero(3), scalar(0.0)), InvalidArgument);
  CHECK_THROWS_AS(StochasticProblem(Matrix::Zero(2, 3), {}, Vector::Zero(2), {}), InvalidArgument);
  CHECK_THROWS_AS(StochasticProblem(Matrix::Zero(2, 2), {Matrix::Zero(2, 2)}, Vector::Zero(2), {}), InvalidArgument);
  CHECK_THROWS_AS(StochasticProblem(Matrix::Zero(2, 2), {Matrix::Zero(3, 3)}, Vector::Zero(2), {Vector::Zero(2)}),
                  InvalidArgument);
}

TEST_CASE("finite scenario probabilities are validated") {
  auto make = [](double p1, double p2) {
    return StochasticProblem(Matrix::Identity(1, 1), {Matrix::Identity(1, 1)}, Vector::Zero(1), {Vector::Zero(1)},
                             FiniteScenarios{{Scenario{scalar(0), p1}, Scenario{scalar(1), p2}}});
  };
  CHECK_NOTHROW(make(0.25, 0.75));
  CHECK_THROWS_AS(make(0.5, 0.6), InvalidArgument);
  CHECK_THROWS_AS(make(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make(-0.5, 1.5), InvalidArgument);
  CHECK_THROWS_AS(StochasticProblem(Matrix::Identity(1, 1), {}, Vector::Zero(1), {}, FiniteScenarios{}),
                  InvalidArgument);
}

TEST_CASE("residual vanishes at the known solutions") {
  CHECK(residual(builtin_example("ex4_1"), v({1, 3}), scalar(0.0)).norm() == 0.0);
  CHECK(residual(builtin_example("ex2_1"), Vector::Ones(4), scalar(0.0)).norm() == 0.0);
  const auto p = builtin_example("ex4_2");
  CHECK(residual(p, Vector::Zero(4), scalar(0.3)) == -eval_b(p, scalar(0.3)));
}

TEST_CASE("smooth_abs") {
  CHECK(smooth_abs(0.0, 0.04) == doctest::Approx(0.2));
  CHECK(smooth_abs(3.0, 0.0) == 3.0);
  CHECK(smooth_abs(-3.0, 0.0) == 3.0);
  CHECK(smooth_abs(1.0, 0.01) == doctest::Approx(1.004987562112089).epsilon(1e-14));
  CHECK_THROWS_AS(smooth_abs(1.0, -1e-3), InvalidArgument);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-10, 10);
    const double mu = rng.log_uniform(1e-12, 1.0);
    CHECK(std::abs(smooth_abs(t, mu) - std::abs(t)) <= std::sqrt(mu) + 1e-15);
  }
}

TEST_CASE("erm_objective") {
  const auto p = builtin_example("ex4_1");
  const SampleSet halton = generate(SamplerSpec{Halton{}, 37}, p);
  CHECK(erm_objective(p, halton, v({1, 3})) <= 1e-28);

  const SampleSet single({scalar(0.0)});
  CHECK(erm_objective(p, single, Vector::Zero(2)) == 41.0);

  Rng rng(5);
  for (int i = 0; i < 50; ++i) CHECK(erm_objective(p, halton, rng.vector(2, -5, 5)) >= 0.0);
}

TEST_CASE("finite scenarios: weighted average equals sum p_i ||r_i||^2") {
  const auto p = StochasticProblem(
      builtin_example("ex2_1").a_base(), {Matrix::Identity(4, 4)}, builtin_example("ex2_1").b_base(),
      {Vector::Ones(4)},
      FiniteScenarios{{Scenario{scalar(0.0), 0.2}, Scenario{scalar(2.0), 0.5}, Scenario{scalar(-1.0), 0.3}}});
  const SampleSet s = generate(SamplerSpec{Scenarios{}, 1}, p);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.vector(4, -2, 2);
    double want = 0.0;
    for (const auto& sc : p.scenarios().scenarios) want += sc.probability * residual(p, x, sc.omega).squaredNorm();
    CHECK(erm_objective(p, s, x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("smoothed_objective") {
  const auto p = builtin_example("ex4_1");
  const SampleSet halton = generate(SamplerSpec{Halton{}, 20}, p);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.vector(2, -4, 4);
    CHECK(smoothed_objective(p, halton, x, 0.0) == erm_objective(p, halton, x));
    CHECK(smoothed_objective(p, halton, x, 0.1) >= 0.0);
  }

  // (1 - sqrt(1.01))^2 + (3 - sqrt(9.01))^2
  const double r1 = 1.0 - std::sqrt(1.01);
  const double r2 = 3.0 - std::sqrt(9.01);
  const SampleSet single({scalar(0.0)});
  CHECK(smoothed_objective(p, single, v({1, 3}), 0.01) == doctest::Approx(r1 * r1 + r2 * r2).epsilon(1e-12));
  CHECK(smoothed_objective(p, single, v({1, 3}), 0.01) == doctest::Approx(2.76520e-5).epsilon(1e-5));

  CHECK_THROWS_AS(smoothed_objective(p, halton, v({1, 3}), -1.0), InvalidArgument);
}

TEST_CASE("library objective agrees with the per-sample definition") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_problem(rng, 3, 2);
    const SampleSet s = generate(SamplerSpec{PseudoRandom{std::uint64_t(trial)}, 15}, p);
    const Vector x = rng.vector(3, -2, 2);
    const double mu = rng.log_uniform(1e-6, 1e-1);
    CHECK(smoothed_objective(p, s, x, mu) == doctest::Approx(testing::direct_objective(p, s, x, mu)).epsilon(1e-12));
  }
}

TEST_CASE("empty sample sets are rejected") {
  CHECK_THROWS_AS(SampleSet(std::vector<Vector>{}), InvalidArgument);
  CHECK_THROWS_AS(SampleSet({scalar(0.0)}, {0.0}), InvalidArgument);
  CHECK_THROWS_AS(SampleSet({scalar(0.0)}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("smoothed_jacobian") {
  const auto p = builtin_example("ex4_2");
  const Vector w = scalar(0.4);
  CHECK(smoothed_jacobian(p, Vector::Zero(4), w, 0.01) == eval_A(p, w));

  const auto scalar_problem = one_dim(2.0, 0.0);
  CHECK(smoothed_jacobian(scalar_problem, Vector::Ones(1), Vector(0), 0.0)(0, 0) == 1.0);

  const Vector x = v({1, -2, 3, -4});
  const Matrix big_mu = smoothed_jacobian(p, x, w, 1e12);
  CHECK((big_mu - eval_A(p, w)).cwiseAbs().maxCoeff() < 1e-5);

  CHECK_THROWS_AS(smoothed_jacobian(p, v({1, 0, 1, 1}), w, 0.0), NonsmoothPoint);
  CHECK_NOTHROW(smoothed_jacobian(p, v({1, -1, 1, 1}), w, 0.0));
}

TEST_CASE("smoothed_gradient closed cases") {
  // r = 2 - 1 = 1, J = 1, gradient 2 r J = 2.
  const auto p = one_dim(2.0, 0.0);
  const SampleSet single({Vector(0)});
  CHECK(smoothed_gradient(p, single, Vector::Ones(1), 0.0)[0] == doctest::Approx(2.0));
  CHECK(smoothed_gradient(p, single, Vector::Ones(1), 1e-12)[0] == doctest::Approx(2.0));

  // b chosen so the smoothed residual at x = 1, mu = 0.01 is zero.
  const auto zero = one_dim(2.0, 2.0 - std::sqrt(1.01));
  CHECK(std::abs(smoothed_gradient(zero, single, Vector::Ones(1), 0.01)[0]) < 1e-15);

  CHECK_THROWS_AS(smoothed_gradient(p, single, Vector::Zero(1), 0.0), NonsmoothPoint);
}

TEST_CASE("smoothed_gradient matches finite differences and the per-sample Jacobian sum") {
  Rng rng(2024);
  for (const char* id : {"ex4_1", "ex4_2"}) {
    const auto p = builtin_example(id);
    const SampleSet s = generate(SamplerSpec{PseudoRandom{1}, 50}, p);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector x = rng.vector(p.n(), -3, 3);
      const double mu = rng.log_uniform(1e-6, 1e-1);
      const Vector g = smoothed_gradient(p, s, x, mu);

      const Vector fd = fd_gradient([&](const Vector& y) { return smoothed_objective(p, s, y, mu); }, x, 1e-6);
      CHECK(testing::rel_error(g, fd) <= 1e-5);

      Vector per_sample = Vector::Zero(p.n());
      const Vector psi = (x.array().square() + mu).sqrt().matrix();
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Vector& w = s.points()[i];
        const Vector r = eval_A(p, w) * x - psi - eval_b(p, w);
        per_sample += s.weights()[i] * smoothed_jacobian(p, x, w, mu).transpose() * r;
      }
      per_sample *= 2.0 / double(s.size());
      CHECK(testing::rel_error(g, per_sample) <= 1e-12);
    }
  }
}

TEST_CASE("affine consistency: basis vectors recover the coefficient matrices") {
  Rng rng(17);
  const auto p = random_problem(rng, 4, 3);
  const Matrix a0 = eval_A(p, Vector::Zero(3));
  const Vector b0 = eval_b(p, Vector::Zero(3));
  CHECK(a0 == p.a_base());
  CHECK(b0 == p.b_base());
  for (Index j = 0; j < 3; ++j) {
    const Vector e = Vector::Unit(3, j);
    CHECK(eval_A(p, e) == p.a_base() + p.a_terms()[std::size_t(j)]);
    CHECK(eval_b(p, e) == p.b_base() + p.b_terms()[std::size_t(j)]);
    CHECK((eval_A(p, e) - a0 - p.a_terms()[std::size_t(j)]).cwiseAbs().maxCoeff() <= 1e-15);
  }
}
