#include "stochave/experiment.hpp"

#include <chrono>
#include <random>

#include "stochave/ev_formulation.hpp"

namespace stochave {

std::string_view to_string(Route route) { return route == Route::Erm ? "erm" : "ev"; }

Vector starting_point(const StartPolicy& policy, Index n) {
  if (const auto* given = std::get_if<GivenStart>(&policy)) {
    if (given->x.size() != n) throw InvalidArgument("given x0 does not match the problem dimension");
    return given->x;
  }
  const auto& box = std::get<UniformRandomStart>(policy);
  if (!(box.lo <= box.hi)) throw InvalidArgument("start box requires lo <= hi");
  std::mt19937_64 rng(box.seed);
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x[i] = box.lo + (box.hi - box.lo) * u;
  }
  return x;
}

std::string describe(const SamplerSpec& spec) {
  if (const auto* h = std::get_if<Halton>(&spec.kind)) return "halton(offset=" + std::to_string(h->offset) + ")";
  if (const auto* r = std::get_if<PseudoRandom>(&spec.kind))
    return "pseudo_random(seed=" + std::to_string(r->seed) + ")";
  return "scenarios";
}

RunResult run_experiment(const StochasticProblem& problem, const SamplerSpec& sampler,
                         const SolverConfig& cfg, const StartPolicy& start, Route route,
                         std::string label) {
  RunResult out;
  RunRecord& rec = out.record;
  rec.example = std::move(label);
  rec.route = route;
  rec.x0 = starting_point(start, problem.n());

  const auto t0 = std::chrono::steady_clock::now();
  if (route == Route::Erm) {
    const SampleSet samples = generate(sampler, problem);
    rec.N = samples.size();
    rec.sampler = describe(sampler);
    out.report = solve(problem, samples, rec.x0, cfg);
  } else {
    const EvInstance inst = expected_instance(problem);
    rec.N = inst.scenarios.size();
    rec.sampler = "expected_value";
    rec.ev_uniform_extension = problem.is_uniform_box();
    out.report = ev_solve(inst, rec.x0, cfg);
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  rec.x_star = out.report.x_final;
  rec.f_star = out.report.f_final;
  rec.f_smoothed = out.report.f_smoothed_final;
  rec.grad_norm = out.report.grad_norm_final;
  rec.mu_final = out.report.mu_final;
  rec.iterations = out.report.iterations;
  rec.status = out.report.status;
  return out;
}

}  // namespace stochave
