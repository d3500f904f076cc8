#include "stochave/sampling.hpp"

#include <random>

namespace stochave {

namespace {

// 53 random mantissa bits -> [0,1). Fully specified, unlike
// std::uniform_real_distribution.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SampleSet pseudo_random(const PseudoRandom& kind, std::size_t count, Index dim) {
  std::mt19937_64 rng(kind.seed);
  std::vector<Vector> points(count, Vector(dim));
  for (auto& p : points)
    for (Index j = 0; j < dim; ++j) p[j] = unit_double(rng);
  return SampleSet(std::move(points));
}

SampleSet halton(const Halton& kind, std::size_t count, Index dim) {
  const auto bases = first_primes(std::size_t(dim));
  std::vector<Vector> points(count, Vector(dim));
  for (std::size_t i = 0; i < count; ++i)
    for (Index j = 0; j < dim; ++j)
      points[i][j] = radical_inverse(kind.offset + i + 1, bases[std::size_t(j)]);
  return SampleSet(std::move(points));
}

SampleSet scenarios(const StochasticProblem& problem) {
  if (problem.is_uniform_box())
    throw InvalidArgument("scenario sampler requires a finite-scenario distribution");
  const auto& list = problem.scenarios().scenarios;
  const double n = static_cast<double>(list.size());
  std::vector<Vector> points;
  std::vector<double> weights;
  for (const auto& s : list) {
    points.push_back(s.omega);
    weights.push_back(n * s.probability);
  }
  return SampleSet(std::move(points), std::move(weights));
}

}  // namespace

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv_base = 1.0 / base;
  double scale = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  return value;
}

std::vector<std::uint32_t> first_primes(std::size_t k) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t c = 2; primes.size() < k; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

SampleSet generate(const SamplerSpec& spec, const StochasticProblem& problem) {
  if (std::holds_alternative<Scenarios>(spec.kind)) return scenarios(problem);
  if (spec.count < 1) throw InvalidArgument("sample count must be >= 1");
  if (!problem.is_uniform_box())
    throw InvalidArgument("unit-hypercube samplers require a uniform-box distribution");
  if (const auto* pr = std::get_if<PseudoRandom>(&spec.kind))
    return pseudo_random(*pr, spec.count, problem.m());
  return halton(std::get<Halton>(spec.kind), spec.count, problem.m());
}

}  // namespace stochave
