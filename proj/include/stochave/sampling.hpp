#pragma once

#include <cstdint>
#include <variant>

#include "stochave/problem.hpp"

namespace stochave {

/// Seeded uniform draws on [0,1)^m from mt19937_64.
struct PseudoRandom {
  std::uint64_t seed = 0;
};

/// Halton points with the first m primes as bases; point i uses index
/// offset + i + 1, so sets of increasing size are prefix-nested.
struct Halton {
  std::uint64_t offset = 0;
};

/// Emit the scenarios of a finite distribution, weights N * p_i.
struct Scenarios {};

using SamplerKind = std::variant<PseudoRandom, Halton, Scenarios>;

struct SamplerSpec {
  SamplerKind kind = Halton{};
  std::size_t count = 1;
};

/// Digit reversal of index in the given base, in [0,1).
double radical_inverse(std::uint64_t index, std::uint32_t base);

/// First k primes (2, 3, 5, ...).
std::vector<std::uint32_t> first_primes(std::size_t k);

SampleSet generate(const SamplerSpec& spec, const StochasticProblem& problem);

}  // namespace stochave
