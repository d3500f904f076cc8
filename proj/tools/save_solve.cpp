// save-solve: run, reproduce and verify stochastic absolute value equation
// experiments from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stochave/analytic.hpp"
#include "stochave/ev_formulation.hpp"
#include "stochave/examples.hpp"
#include "stochave/experiment.hpp"
#include "stochave/problem_io.hpp"
#include "stochave/report.hpp"
#include "stochave/sampling.hpp"

using namespace stochave;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitIterationCap = 2;
constexpr int kExitLineSearch = 3;
constexpr int kExitBadInput = 64;

Vector parse_vector_arg(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (values.empty()) throw InvalidArgument(std::string(what) + " is empty");
  return Eigen::Map<const Vector>(values.data(), Index(values.size()));
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_vector_arg(text, "--N")) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw InvalidArgument("--N entries must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string indexed_path(const std::string& path, std::size_t index, std::size_t total) {
  if (total == 1) return path;
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string suffix = "_" + std::to_string(index);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int exit_code(const std::vector<RunRecord>& records) {
  int code = kExitConverged;
  for (const auto& r : records) {
    if (r.status == SolveStatus::LineSearchFailure) code = kExitLineSearch;
    else if (r.status == SolveStatus::IterationCap && code == kExitConverged) code = kExitIterationCap;
  }
  return code;
}

struct ProblemSource {
  std::string example;
  std::string problem_file;
  Index n = 100;

  void add_to(CLI::App& cmd) {
    auto* ex = cmd.add_option("--example", example, "Built-in example id (ex2_1, ex4_1, ex4_2, ex4_3, ex4_4)");
    auto* pf = cmd.add_option("--problem-file", problem_file, "JSON problem file");
    ex->excludes(pf);
    cmd.add_option("--n", n, "Dimension for ex4_4")->capture_default_str();
  }

  std::string label() const { return example.empty() ? problem_file : example; }

  ProblemFile load() const {
    if (!example.empty()) return ProblemFile{builtin_example(example, n), std::nullopt, std::nullopt};
    if (!problem_file.empty()) return load_problem_file(problem_file);
    throw InvalidArgument("one of --example or --problem-file is required");
  }
};

struct SolverFlags {
  std::optional<double> rho, sigma, delta, mu0, gamma_bar, epsilon;
  std::optional<int> max_iter, max_backtracks;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--rho", rho, "Armijo step shrink factor");
    cmd.add_option("--sigma", sigma, "Smoothing parameter shrink factor");
    cmd.add_option("--delta", delta, "Armijo sufficient-decrease fraction");
    cmd.add_option("--mu0", mu0, "Initial smoothing parameter");
    cmd.add_option("--gamma-bar", gamma_bar, "Smoothing update threshold");
    cmd.add_option("--epsilon", epsilon, "Gradient-norm tolerance");
    cmd.add_option("--max-iter", max_iter, "Iteration cap");
    cmd.add_option("--max-backtracks", max_backtracks, "Line-search backtrack cap");
  }

  SolverConfig apply(SolverConfig cfg) const {
    if (rho) cfg.rho_backtrack = *rho;
    if (sigma) cfg.sigma = *sigma;
    if (delta) cfg.delta = *delta;
    if (mu0) cfg.mu0 = *mu0;
    if (gamma_bar) cfg.gamma_bar = *gamma_bar;
    if (epsilon) cfg.epsilon = *epsilon;
    if (max_iter) cfg.max_iter = *max_iter;
    if (max_backtracks) cfg.max_backtracks = *max_backtracks;
    cfg.validate();
    return cfg;
  }
};

struct OutputFlags {
  std::string format = "text";
  std::string out;
  std::string trace;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--format", format, "Table format on stdout")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    cmd.add_option("--out", out, "Write the results table as CSV");
    cmd.add_option("--trace", trace, "Write per-iteration trace CSV (suffixed _i for several runs)");
  }

  void emit(const std::vector<RunResult>& runs) const {
    std::vector<RunRecord> records;
    for (const auto& r : runs) records.push_back(r.record);
    std::cout << emit_table(records, format == "csv" ? TableFormat::Csv : TableFormat::AlignedText);
    if (!out.empty()) write_file(out, emit_table(records, TableFormat::Csv));
    if (!trace.empty())
      for (std::size_t i = 0; i < runs.size(); ++i)
        write_file(indexed_path(trace, i, runs.size()), emit_trace(runs[i].report));
    for (const auto& r : records) {
      std::cerr << r.example << " " << to_string(r.route) << " N=" << r.N << " " << r.sampler
                << " status=" << to_string(r.status) << " iterations=" << r.iterations
                << " grad_norm=" << format_objective(r.grad_norm)
                << " f_smoothed=" << format_objective(r.f_smoothed) << " mu=" << format_objective(r.mu_final);
      if (r.ev_uniform_extension) std::cerr << " [ev on uniform box: no scenario blocks]";
      std::fprintf(stderr, " time=%.3fs\n", r.wall_seconds);
    }
  }
};

SamplerSpec make_sampler(const std::string& kind, std::size_t count, std::uint64_t seed,
                         std::uint64_t offset) {
  if (kind == "halton") return SamplerSpec{Halton{offset}, count};
  if (kind == "random") return SamplerSpec{PseudoRandom{seed}, count};
  return SamplerSpec{Scenarios{}, count};
}

int run_command(const ProblemSource& src, const SolverFlags& solver, const OutputFlags& output,
                const std::string& route_name, const std::string& sampler_name,
                const std::string& counts, std::uint64_t seed, std::uint64_t offset,
                const std::string& x0_text, std::uint64_t x0_seed, const std::string& x0_box) {
  const ProblemFile file = src.load();
  const StochasticProblem& problem = file.problem;
  const SolverConfig cfg = solver.apply(file.solver.value_or(SolverConfig{}));
  const Route route = route_name == "ev" ? Route::Ev : Route::Erm;

  std::vector<SamplerSpec> samplers;
  if (!sampler_name.empty() || !counts.empty() || !file.sampler) {
    std::string kind = sampler_name;
    if (kind.empty()) kind = problem.is_uniform_box() ? "halton" : "scenarios";
    for (std::size_t n : parse_counts(counts.empty() ? "100" : counts))
      samplers.push_back(make_sampler(kind, n, seed, offset));
  } else {
    samplers.push_back(*file.sampler);
  }

  const Vector box = parse_vector_arg(x0_box, "--x0-box");
  if (box.size() != 2) throw InvalidArgument("--x0-box expects lo,hi");

  std::vector<RunResult> runs;
  for (std::size_t i = 0; i < samplers.size(); ++i) {
    StartPolicy start = UniformRandomStart{box[0], box[1], x0_seed + i};
    if (!x0_text.empty()) start = GivenStart{parse_vector_arg(x0_text, "--x0")};
    runs.push_back(run_experiment(problem, samplers[i], cfg, start, route, src.label()));
    if (route == Route::Ev) break;
  }
  output.emit(runs);
  std::vector<RunRecord> records;
  for (const auto& r : runs) records.push_back(r.record);
  return exit_code(records);
}

int reproduce_command(const ProblemSource& src, const SolverFlags& solver, const OutputFlags& output,
                      const std::string& sampler_name, std::uint64_t seed, std::uint64_t x0_seed) {
  if (src.example.empty()) throw InvalidArgument("reproduce requires --example");
  const StochasticProblem problem = builtin_example(src.example, src.n);
  const SolverConfig cfg = solver.apply(SolverConfig{});
  const auto rows = reference_runs(src.example);

  std::vector<RunResult> runs;
  if (src.example == "ex2_1") {
    for (const auto& row : rows)
      runs.push_back(run_experiment(problem, SamplerSpec{Scenarios{}, 1}, cfg, GivenStart{row.x0},
                                    Route::Ev, src.example));
  } else {
    const std::vector<std::size_t> counts{10, 50, 100, 200, 500};
    for (std::size_t i = 0; i < counts.size(); ++i) {
      StartPolicy start = UniformRandomStart{0.0, 2.0, x0_seed + i};
      if (!rows.empty()) start = GivenStart{rows[i].x0};
      runs.push_back(run_experiment(problem, make_sampler(sampler_name, counts[i], seed, 0), cfg, start,
                                    Route::Erm, src.example));
    }
  }
  output.emit(runs);
  std::vector<RunRecord> records;
  for (const auto& r : runs) records.push_back(r.record);
  return exit_code(records);
}

int verify_command(const ProblemSource& src, const std::string& x_text, double tol,
                   const std::vector<std::string>& omega_texts) {
  const StochasticProblem problem = src.load().problem;
  const Vector x = parse_vector_arg(x_text, "--x");
  if (x.size() != problem.n()) throw InvalidArgument("--x does not match the problem dimension");

  std::vector<Vector> omegas;
  for (const auto& t : omega_texts) omegas.push_back(parse_vector_arg(t, "--omega"));
  if (omegas.empty()) {
    if (problem.is_uniform_box()) {
      for (double v : {0.0, 0.5, 1.0}) omegas.push_back(Vector::Constant(problem.m(), v));
    } else {
      for (const auto& s : problem.scenarios().scenarios) omegas.push_back(s.omega);
    }
  }

  bool all = true;
  for (const auto& omega : omegas) {
    if (omega.size() != problem.m()) throw InvalidArgument("--omega does not match the problem's m");
    const bool save_ok = verify_save(problem, x, omega, tol);
    const bool glcp_ok = verify_glcp(eval_A(problem, omega), eval_b(problem, omega), x, tol);
    all = all && save_ok && glcp_ok;
    std::cout << "omega=" << format_vector(omega) << " residual_norm="
              << format_objective(residual(problem, x, omega).norm()) << " save=" << (save_ok ? "true" : "false")
              << " glcp=" << (glcp_ok ? "true" : "false") << "\n";
  }
  const EvInstance inst = expected_instance(problem);
  std::cout << "expected_value glcp=" << (verify_glcp(inst.A_bar, inst.b_bar, x, tol) ? "true" : "false")
            << " half_sq_H=" << format_objective(ev_objective(inst, x, 0.0)) << "\n";
  return all ? 0 : 1;
}

int oracle_command(const std::string& path, const std::string& x_text, std::size_t count,
                   std::uint64_t offset) {
  const CaseTwoInstance inst = load_case2_file(path);
  const Vector x = parse_vector_arg(x_text, "--x");
  const StochasticProblem problem = inst.to_problem();
  const double exact = case2_objective(inst, x);
  const double sampled = erm_objective(problem, generate(SamplerSpec{Halton{offset}, count}, problem), x);
  std::cout << "exact=" << format_objective(exact) << "\n"
            << "halton_N" << count << "=" << format_objective(sampled) << "\n"
            << "abs_error=" << format_objective(std::abs(sampled - exact)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and benchmark runner for stochastic absolute value equations"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Solve one or more instances and print a results table");
  ProblemSource run_src;
  SolverFlags run_solver;
  OutputFlags run_out;
  std::string route = "erm", sampler, counts, x0, x0_box = "0,2";
  std::uint64_t seed = 0, offset = 0, x0_seed = 0;
  run_src.add_to(*run);
  run_solver.add_to(*run);
  run_out.add_to(*run);
  run->add_option("--route", route, "erm or ev")->check(CLI::IsMember({"erm", "ev"}))->capture_default_str();
  run->add_option("--sampler", sampler, "halton, random or scenarios")
      ->check(CLI::IsMember({"halton", "random", "scenarios"}));
  run->add_option("--N", counts, "Sample count(s), comma-separated; one run per entry");
  run->add_option("--seed", seed, "Seed of the random sampler")->capture_default_str();
  run->add_option("--offset", offset, "Halton index offset")->capture_default_str();
  run->add_option("--x0", x0, "Starting point, comma-separated (use --x0=-1,2 for negatives)");
  run->add_option("--x0-seed", x0_seed, "Seed for random starting points")->capture_default_str();
  run->add_option("--x0-box", x0_box, "Box lo,hi for random starting points")->capture_default_str();

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Rerun a reference results table for a built-in example");
  ProblemSource rep_src;
  SolverFlags rep_solver;
  OutputFlags rep_out;
  std::string rep_sampler = "random";
  std::uint64_t rep_seed = 0, rep_x0_seed = 0;
  rep->add_option("--example", rep_src.example, "Built-in example id")->required();
  rep->add_option("--n", rep_src.n, "Dimension for ex4_4")->capture_default_str();
  rep_solver.add_to(*rep);
  rep_out.add_to(*rep);
  rep->add_option("--sampler", rep_sampler, "halton or random")
      ->check(CLI::IsMember({"halton", "random"}))
      ->capture_default_str();
  rep->add_option("--seed", rep_seed, "Seed of the random sampler")->capture_default_str();
  rep->add_option("--x0-seed", rep_x0_seed, "Seed for random starting points")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Check a candidate solution against the SAVE and GLCP forms");
  ProblemSource ver_src;
  std::string ver_x;
  double tol = 1e-8;
  std::vector<std::string> omegas;
  ver_src.add_to(*ver);
  ver->add_option("--x", ver_x, "Candidate solution, comma-separated")->required();
  ver->add_option("--tol", tol, "Tolerance")->capture_default_str();
  ver->add_option("--omega", omegas, "omega vector(s) to check (repeatable)")->take_all();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Compare the closed-form case II objective with Halton sampling");
  std::string case2_path, orc_x;
  std::size_t orc_count = 4096;
  std::uint64_t orc_offset = 0;
  orc->add_option("--case2-file", case2_path, "JSON file with A, b_tilde, T")->required();
  orc->add_option("--x", orc_x, "Point, comma-separated")->required();
  orc->add_option("--N", orc_count, "Halton sample count")->capture_default_str();
  orc->add_option("--offset", orc_offset, "Halton index offset")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*run) return run_command(run_src, run_solver, run_out, route, sampler, counts, seed, offset, x0, x0_seed, x0_box);
    if (*rep) return reproduce_command(rep_src, rep_solver, rep_out, rep_sampler, rep_seed, rep_x0_seed);
    if (*ver) return verify_command(ver_src, ver_x, tol, omegas);
    if (*orc) return oracle_command(case2_path, orc_x, orc_count, orc_offset);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
