#include "stochave/examples.hpp"

#include <initializer_list>

namespace stochave {

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> data) {
  Matrix a(Index(data.size()), Index(data.begin()->size()));
  Index i = 0;
  for (const auto& row : data) {
    Index j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

Vector vec(std::initializer_list<double> data) {
  Vector v(Index(data.size()));
  Index i = 0;
  for (double d : data) v[i++] = d;
  return v;
}

// A(w) = A_0 + w I, b(w) = b_0 + w b_1.
StochasticProblem shifted_identity(Matrix a0, Vector b0, Vector b1, Distribution dist = UniformBox{}) {
  const Index n = a0.rows();
  return StochasticProblem(std::move(a0), {Matrix::Identity(n, n)}, std::move(b0), {std::move(b1)},
                           std::move(dist));
}

StochasticProblem ex2_1() {
  Matrix a0 = rows({{10, 1, 2, 0}, {1, 11, 3, 1}, {0, 2, 12, 1}, {1, 7, 0, 13}});
  FiniteScenarios dist{{Scenario{vec({0.0}), 0.5}, Scenario{vec({2.0}), 0.5}}};
  return shifted_identity(std::move(a0), vec({12, 15, 14, 20}), Vector::Ones(4), std::move(dist));
}

StochasticProblem ex4_1() {
  return shifted_identity(rows({{2, 1}, {5, 1}}), vec({4, 5}), vec({1, 3}));
}

StochasticProblem ex4_2() {
  Matrix a0 = rows({{2, 1, 0, 0}, {2, 1, 0, 0}, {0, 0, 2, 1}, {0, 2, 0, 1}});
  return shifted_identity(std::move(a0), Vector::Constant(4, 2.0), Vector::Ones(4));
}

StochasticProblem ex4_3() {
  // clang-format off
  Matrix a0 = rows({
      {5,       0,       0,       0,       0,       2,       1,       0,       0,        3},
      {1.0/2,   2,       0,       1.0/2,   1,       0,       1,       0,       6,        0},
      {0,       1.0/4,   7,       3.0/4,   0,       2,       0,       0,       1.0/2,    1.0/2},
      {1,       1,       2,       2,       1.0/2,   0,       3.0/2,   2,       0,        1},
      {0,       0,       2.0/5,   1.0/4,   6,       2,       0,       1,       7.0/20,   1},
      {2,       1.0/2,   4,       0,       0,       1,       1.0/2,   2,       1,        0},
      {0,       5,       0,       2.0/3,   0,       2.0/3,   3,       1.0/4,   1,        5.0/12},
      {2,       1,       1,       1,       1,       1.0/2,   0,       4,       1.0/2,    0},
      {1.0/7,   5.0/7,   0,       0,       1,       0,       1.0/7,   0,       9,        0},
      {3,       0,       2,       1,       5.0/2,   0,       1.0/2,   1.0/4,   1.0/4,    1}});
  // clang-format on
  return shifted_identity(std::move(a0), Vector::Constant(10, 10.0), Vector::Ones(10));
}

StochasticProblem ex4_4(Index n) {
  if (n < 2) throw InvalidArgument("ex4_4 requires n >= 2");
  Matrix a0 = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    a0(i, i) = 2.0;
    if (i > 0) a0(i, i - 1) = 1.0;
    if (i + 1 < n) a0(i, i + 1) = 1.0;
  }
  Vector b0 = Vector::Constant(n, 3.0);
  b0[0] = 2.0;
  b0[n - 1] = 2.0;
  return shifted_identity(std::move(a0), std::move(b0), Vector::Ones(n));
}

}  // namespace

StochasticProblem builtin_example(std::string_view id, Index n) {
  if (id == "ex2_1") return ex2_1();
  if (id == "ex4_1") return ex4_1();
  if (id == "ex4_2") return ex4_2();
  if (id == "ex4_3") return ex4_3();
  if (id == "ex4_4") return ex4_4(n);
  throw InvalidArgument("unknown example id '" + std::string(id) + "'");
}

const std::vector<std::string>& builtin_example_ids() {
  static const std::vector<std::string> ids{"ex2_1", "ex4_1", "ex4_2", "ex4_3", "ex4_4"};
  return ids;
}

std::vector<ReferenceRun> reference_runs(std::string_view id) {
  if (id == "ex2_1") {
    // Single scenario set; N is the scenario count.
    return {{2, vec({2.5127, -2.4490, 0.0596, 1.9908})},
            {2, vec({-1.4834, 3.3083, 0.8526, 0.4972})},
            {2, vec({-3.3782, 2.9428, -1.8878, 0.2853})},
            {2, vec({-3.9335, 4.6190, -4.9537, 2.7491})},
            {2, vec({3.5303, 1.2206, -1.4905, 0.1325})}};
  }
  if (id == "ex4_1") {
    return {{10, vec({0.9415, 1.7138})},
            {50, vec({1.5088, 0.6925})},
            {100, vec({1.6206, 1.1140})},
            {200, vec({1.6822, 0.7090})},
            {500, vec({1.3098, 1.7802})}};
  }
  if (id == "ex4_2") {
    return {{10, vec({1.3027, 1.4874, 0.6039, 0.1792})},
            {50, vec({1.0894, 1.9952, 1.0220, 1.7470})},
            {100, vec({0.9878, 1.7254, 0.4858, 1.6685})},
            {200, vec({0.2891, 0.7410, 1.2448, 1.9951})},
            {500, vec({1.6171, 1.9691, 1.7718, 0.4277})}};
  }
  if (id == "ex4_3" || id == "ex4_4") return {};
  throw InvalidArgument("unknown example id '" + std::string(id) + "'");
}

}  // namespace stochave
