#pragma once

// Seeded random graph models for experiments. Every generator is a pure
// function of its parameters and the seed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pathfree/graph.hpp"

namespace pathfree {

/// Parameters were impossible to satisfy (odd n * d, too many edges, ...).
class InfeasibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// m distinct edges chosen uniformly among all pairs of [0, n).
Graph generate_uniform_m(std::size_t n, std::size_t m, std::uint64_t seed);

/// Uniform-ish d-regular graph by the pairing model, rejecting loops and
/// repeated pairs as they appear and restarting when stuck.
Graph generate_d_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Vertices shuffled and cut into stars with `leaves` leaves each; a short
/// last group becomes a smaller star.
Graph generate_star_forest(std::size_t n, std::size_t leaves, std::uint64_t seed);

/// Union of `paths` independent uniformly random Hamiltonian paths on [0, n).
Graph generate_path_union(std::size_t n, std::size_t paths, std::uint64_t seed);

struct GeneratorSpec {
  std::string model;  // uniform-m, d-regular, star-forest, path-union
  std::size_t n = 0;
  std::size_t m = 0;  // uniform-m
  std::size_t d = 0;  // degree, leaves per star, or number of paths
  std::uint64_t seed = 0;
};

Graph generate(const GeneratorSpec& spec);

/// "model=.. n=.. ... seed=.." for edge-list headers.
std::string describe(const GeneratorSpec& spec);

}  // namespace pathfree
