#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library and only run on tiny inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "pathfree/colouring.hpp"
#include "pathfree/graph.hpp"
#include "pathfree/rational.hpp"

namespace oracle {

using pathfree::Rational;

/// Sum over all q^n assignments of the maximum load, divided by q^n.
inline Rational max_load_expectation(std::uint64_t q, std::uint64_t n) {
  std::vector<std::uint64_t> load(q, 0);
  std::uint64_t total = 0;
  std::function<void(std::uint64_t, std::uint64_t)> go = [&](std::uint64_t placed, std::uint64_t best) {
    if (placed == n) {
      total += best;
      return;
    }
    for (std::uint64_t b = 0; b < q; ++b) {
      ++load[b];
      go(placed + 1, std::max(best, load[b]));
      --load[b];
    }
  };
  go(0, 0);
  pathfree::Integer count = 1;
  for (std::uint64_t i = 0; i < n; ++i) count *= static_cast<unsigned long>(q);
  Rational out(pathfree::Integer(static_cast<unsigned long>(total)), count);
  out.canonicalize();
  return out;
}

/// E max_i X_i over every sequence of n draws from p.
inline Rational multinomial_max(const std::vector<Rational>& p, std::uint64_t n) {
  std::vector<std::uint64_t> load(p.size(), 0);
  Rational total = 0;
  std::function<void(std::uint64_t, Rational)> go = [&](std::uint64_t placed, Rational weight) {
    if (weight == 0) return;
    if (placed == n) {
      total += weight * *std::max_element(load.begin(), load.end());
      return;
    }
    for (std::size_t b = 0; b < p.size(); ++b) {
      ++load[b];
      go(placed + 1, weight * p[b]);
      --load[b];
    }
  };
  go(0, Rational(1));
  return total;
}

/// Vertex count of a longest simple path, by DFS from every vertex.
inline std::size_t longest_path(const pathfree::Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> used(n, 0);
  std::size_t best = n > 0 ? 1 : 0;
  std::function<void(pathfree::Vertex, std::size_t)> go = [&](pathfree::Vertex v, std::size_t len) {
    best = std::max(best, len);
    for (pathfree::Vertex w : g.neighbours(v)) {
      if (used[w]) continue;
      used[w] = 1;
      go(w, len + 1);
      used[w] = 0;
    }
  };
  for (pathfree::Vertex v = 0; v < n; ++v) {
    used[v] = 1;
    go(v, 1);
    used[v] = 0;
  }
  return best;
}

/// Longest monochromatic simple path (vertex count) over all colours.
inline std::size_t longest_mono_path(const pathfree::Graph& g, const pathfree::EdgeColouring& c) {
  std::map<pathfree::Colour, std::vector<pathfree::Edge>> classes;
  for (const auto& [e, colour] : c.assignments()) classes[colour].push_back(e);
  std::size_t best = 0;
  for (auto& [colour, edges] : classes) best = std::max(best, longest_path(pathfree::Graph(g.vertex_count(), edges)));
  return best;
}

}  // namespace oracle
