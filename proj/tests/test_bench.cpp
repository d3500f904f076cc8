#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "stochave/ev_formulation.hpp"
#include "stochave/examples.hpp"
#include "stochave/experiment.hpp"
#include "stochave/problem_io.hpp"
#include "stochave/report.hpp"
#include "stochave/sampling.hpp"
#include "test_support.hpp"

using namespace stochave;
using stochave::testing::Rng;

namespace {

Vector scalar(double w) { return Vector::Constant(1, w); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunRecord record(std::size_t n, Vector x0, Vector x_star, double f) {
  RunRecord r;
  r.example = "ex";
  r.N = n;
  r.x0 = std::move(x0);
  r.x_star = std::move(x_star);
  r.f_star = f;
  return r;
}

const char* kEx41 = R"({
  "n": 2, "m": 1,
  "A_base": [[2, 1], [5, 1]],
  "A_terms": [[[1, 0], [0, 1]]],
  "b_base": [4, 5],
  "b_terms": [[1, 3]],
  "distribution": {"kind": "uniform_box"}
})";

}  // namespace

TEST_CASE("builtin examples") {
  const auto p41 = builtin_example("ex4_1");
  Matrix a(2, 2);
  a << 2, 1, 5, 1;
  CHECK(eval_A(p41, scalar(0.0)) == a);

  const auto p44 = builtin_example("ex4_4", 100);
  CHECK(p44.n() == 100);
  for (double w : {0.0, 0.3, 1.0}) CHECK(residual(p44, Vector::Ones(100), scalar(w)).norm() == 0.0);

  const auto p43 = builtin_example("ex4_3");
  CHECK(p43.n() == 10);
  CHECK(std::count(p43.a_base().data(), p43.a_base().data() + 100, 7.0 / 20.0) >= 1);

  const auto p21 = builtin_example("ex2_1");
  CHECK_FALSE(p21.is_uniform_box());
  CHECK(p21.scenarios().scenarios.size() == 2);

  CHECK_THROWS_AS(builtin_example("ex9_9"), InvalidArgument);
  CHECK_THROWS_AS(builtin_example("ex4_4", 1), InvalidArgument);
  CHECK(builtin_example_ids().size() == 5);
  CHECK(reference_runs("ex4_1").size() == 5);
  CHECK(reference_runs("ex2_1").size() == 5);
  CHECK(reference_runs("ex4_4").empty());
}

TEST_CASE("problem file parsing") {
  const auto file = parse_problem_file(kEx41);
  CHECK(file.problem.n() == 2);
  CHECK(file.problem.m() == 1);
  CHECK(file.problem.is_uniform_box());
  CHECK_FALSE(file.solver);
  CHECK_FALSE(file.sampler);
  CHECK(eval_A(file.problem, scalar(0.4)) == eval_A(builtin_example("ex4_1"), scalar(0.4)));

  const auto loaded = load_problem_file(STOCHAVE_TEST_DATA "/ex4_1.json");
  REQUIRE(loaded.sampler);
  CHECK(loaded.sampler->count == 50);
  CHECK(std::holds_alternative<PseudoRandom>(loaded.sampler->kind));
}

TEST_CASE("problem file diagnostics") {
  auto message = [](const std::string& text) {
    try {
      parse_problem_file(text);
    } catch (const ProblemFileError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  std::string bad = kEx41;
  bad.replace(bad.find("[[2, 1], [5, 1]]"), 16, "[[2, 1, 0], [5, 1]]");
  CHECK(message(bad).find("A_base[0]") != std::string::npos);

  bad = kEx41;
  bad.replace(bad.find("[[1, 3]]"), 8, "[[1, 3, 4]]");
  CHECK(message(bad).find("b_terms[0]") != std::string::npos);

  bad = kEx41;
  bad.replace(bad.find("uniform_box"), 11, "gaussian");
  CHECK(message(bad).find("distribution") != std::string::npos);

  CHECK(message("{\"n\": 2,\n \"m\": }").find("line 2") != std::string::npos);
  CHECK_FALSE(message("{\"n\": 2}").empty());
  CHECK_THROWS_AS(load_problem_file("/nonexistent/file.json"), ProblemFileError);
}

TEST_CASE("problem file round trip") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = rng.integer(1, 5);
    const Index m = rng.integer(0, 3);
    std::vector<Matrix> a_terms;
    std::vector<Vector> b_terms;
    for (Index j = 0; j < m; ++j) {
      a_terms.push_back(rng.matrix(n, n, -1, 1));
      b_terms.push_back(rng.vector(n, -1, 1));
    }
    Distribution dist = UniformBox{};
    if (trial % 2 == 1) {
      dist = FiniteScenarios{{Scenario{rng.vector(m, 0, 2), 0.25}, Scenario{rng.vector(m, 0, 2), 0.75}}};
    }
    SolverConfig cfg;
    cfg.mu0 = rng.uniform(1e-3, 1e-1);
    cfg.max_iter = 321;
    const ProblemFile file{StochasticProblem(rng.matrix(n, n, -5, 5), a_terms, rng.vector(n, -5, 5), b_terms, dist),
                           cfg, SamplerSpec{Halton{3}, 17}};
    const auto back = parse_problem_file(serialize_problem_file(file));
    CHECK(back.problem.a_base() == file.problem.a_base());
    CHECK(back.problem.b_base() == file.problem.b_base());
    for (Index j = 0; j < m; ++j) {
      CHECK(back.problem.a_terms()[j] == a_terms[j]);
      CHECK(back.problem.b_terms()[j] == b_terms[j]);
    }
    CHECK(back.problem.is_uniform_box() == file.problem.is_uniform_box());
    if (!file.problem.is_uniform_box()) {
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.problem.scenarios().scenarios[i].omega == file.problem.scenarios().scenarios[i].omega);
        CHECK(back.problem.scenarios().scenarios[i].probability == file.problem.scenarios().scenarios[i].probability);
      }
    }
    REQUIRE(back.solver);
    CHECK(back.solver->mu0 == cfg.mu0);
    CHECK(back.solver->max_iter == 321);
    REQUIRE(back.sampler);
    CHECK(back.sampler->count == 17);
    CHECK(std::get<Halton>(back.sampler->kind).offset == 3);
  }
}

TEST_CASE("case II file") {
  const auto inst = load_case2_file(STOCHAVE_TEST_DATA "/case2.json");
  CHECK(inst.n() == 2);
  CHECK(inst.t()[1] == 0.6);
  CHECK_THROWS_AS(parse_case2_file(R"({"A": [[1]], "b_tilde": [0], "T": [[0]]})"), InvalidArgument);
}

TEST_CASE("run_experiment") {
  Vector x0(2);
  x0 << 0.9415, 1.7138;
  const auto r = run_experiment(builtin_example("ex4_1"), SamplerSpec{PseudoRandom{0}, 10}, SolverConfig{},
                                GivenStart{x0}, Route::Erm, "ex4_1");
  CHECK(r.record.status == SolveStatus::Converged);
  CHECK(r.record.N == 10);
  CHECK(r.record.sampler == "pseudo_random(seed=0)");
  CHECK(r.record.x0 == x0);
  CHECK(std::abs(r.record.x_star[0] - 1.0) <= 1e-4);
  CHECK(std::abs(r.record.x_star[1] - 3.0) <= 1e-4);
  CHECK(r.record.f_star >= 0.0);
  CHECK(r.record.iterations <= SolverConfig{}.max_iter);

  const auto ev = run_experiment(builtin_example("ex2_1"), SamplerSpec{Scenarios{}, 2}, SolverConfig{},
                                 GivenStart{reference_runs("ex2_1")[0].x0}, Route::Ev, "ex2_1");
  CHECK(ev.record.route == Route::Ev);
  CHECK(ev.record.N == 2);
  CHECK_FALSE(ev.record.ev_uniform_extension);
  CHECK((ev.record.x_star.array() - 1.0).abs().maxCoeff() <= 1e-4);

  const auto ev_box = run_experiment(builtin_example("ex4_1"), SamplerSpec{}, SolverConfig{},
                                     UniformRandomStart{0, 2, 1}, Route::Ev);
  CHECK(ev_box.record.ev_uniform_extension);

  Vector sol(2);
  sol << 1, 3;
  const auto at_solution = run_experiment(builtin_example("ex4_1"), SamplerSpec{PseudoRandom{0}, 10},
                                          SolverConfig{}, GivenStart{sol}, Route::Erm);
  CHECK(at_solution.record.status == SolveStatus::Converged);
  CHECK(at_solution.record.f_star <= 1e-8);
}

TEST_CASE("starting points") {
  const Vector a = starting_point(UniformRandomStart{0, 2, 42}, 6);
  CHECK(a == starting_point(UniformRandomStart{0, 2, 42}, 6));
  CHECK(a != starting_point(UniformRandomStart{0, 2, 43}, 6));
  CHECK(a.minCoeff() >= 0.0);
  CHECK(a.maxCoeff() <= 2.0);
  CHECK_THROWS_AS(starting_point(GivenStart{Vector::Ones(3)}, 4), InvalidArgument);
}

TEST_CASE("emit_table") {
  Vector x0(2);
  x0 << 0.5, 1.25;
  Vector xs(2);
  xs << 1.0, 3.0;
  const std::vector<RunRecord> one{record(10, x0, xs, 1.234e-9)};
  const auto csv = lines(emit_table(one, TableFormat::Csv));
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == "N,x0,x*,f(x*)");
  CHECK(csv[1] == "10,\"(0.5000,1.2500)\",\"(1.0000,3.0000)\",1.2340e-09");

  const auto text = lines(emit_table(one, TableFormat::AlignedText));
  REQUIRE(text.size() == 3);
  CHECK(text[0].find("f(x*)") != std::string::npos);
  CHECK(text[2].find("(1.0000,3.0000)") != std::string::npos);

  CHECK_THROWS_AS(emit_table({}, TableFormat::Csv), InvalidArgument);
}

TEST_CASE("large-dimension table rows are abbreviated") {
  const auto p = builtin_example("ex4_4", 100);
  std::vector<RunRecord> rows;
  for (std::size_t n : {10, 50, 100, 200, 500}) {
    rows.push_back(run_experiment(p, SamplerSpec{PseudoRandom{n}, n}, SolverConfig{},
                                  UniformRandomStart{0, 2, n}, Route::Erm)
                       .record);
  }
  const auto text = lines(emit_table(rows, TableFormat::AlignedText));
  REQUIRE(text.size() == 7);
  for (std::size_t i = 2; i < text.size(); ++i)
    CHECK(text[i].find("(1.0000,1.0000,...,1.0000)") != std::string::npos);
}

TEST_CASE("CSV round trip") {
  Rng rng(3);
  std::vector<RunRecord> records;
  for (int i = 0; i < 8; ++i) {
    const Index n = rng.integer(1, 7);
    records.push_back(record(std::size_t(rng.integer(1, 1000)), rng.vector(n, -5, 5), rng.vector(n, -5, 5),
                             rng.log_uniform(1e-12, 10)));
  }
  const auto rows = parse_table_csv(emit_table(records, TableFormat::Csv));
  REQUIRE(rows.size() == records.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].N == records[i].N);
    CHECK(format_vector(rows[i].x0) == format_vector(records[i].x0));
    CHECK(format_vector(rows[i].x_star) == format_vector(records[i].x_star));
    CHECK(format_objective(rows[i].f_star) == format_objective(records[i].f_star));
  }
  CHECK_THROWS_AS(parse_table_csv("a,b\n1,2\n"), InvalidArgument);
}

TEST_CASE("emit_trace") {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  const StochasticProblem flat(a, {}, Vector::Zero(2), {});
  const auto idle = solve(flat, SampleSet({Vector(0)}), Vector::Zero(2), SolverConfig{});
  const auto idle_lines = lines(emit_trace(idle));
  REQUIRE(idle_lines.size() == 2);
  CHECK(idle_lines[0] == "k,f,f_smoothed,grad_norm,mu,alpha");
  CHECK(idle_lines[1].rfind("0,", 0) == 0);

  const auto p = builtin_example("ex4_2");
  const auto report = solve(p, generate(SamplerSpec{Halton{}, 50}, p), Vector::Zero(4), SolverConfig{});
  REQUIRE(report.status == SolveStatus::Converged);
  const auto trace = lines(emit_trace(report));
  REQUIRE(trace.size() == report.trace.size() + 1);
  double prev_mu = 1e300;
  double last_grad = 0.0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    std::vector<double> cols;
    std::istringstream row(trace[i]);
    for (std::string cell; std::getline(row, cell, ',');) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 6);
    CHECK(cols[4] <= prev_mu);
    prev_mu = cols[4];
    last_grad = cols[3];
  }
  CHECK(last_grad <= SolverConfig{}.epsilon);
}

TEST_CASE("repeated runs give byte-identical CSV") {
  auto run = [] {
    std::vector<RunRecord> rows;
    for (const auto& ref : reference_runs("ex4_1")) {
      rows.push_back(run_experiment(builtin_example("ex4_1"), SamplerSpec{PseudoRandom{7}, ref.N}, SolverConfig{},
                                    GivenStart{ref.x0}, Route::Erm)
                         .record);
    }
    return emit_table(rows, TableFormat::Csv);
  };
  CHECK(run() == run());
}
