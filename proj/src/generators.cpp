#include "pathfree/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pathfree/rng.hpp"

namespace pathfree {

namespace {

constexpr int kRegularRestarts = 1000;

std::vector<Vertex> shuffled_vertices(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  return order;
}

}  // namespace

Graph generate_uniform_m(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) {
    throw InfeasibleParameters("uniform-m: " + std::to_string(m) + " edges do not fit on " + std::to_string(n) +
                               " vertices");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  if (2 * m <= pairs) {
    std::set<Edge> chosen;
    while (chosen.size() < m) {
      const auto a = static_cast<Vertex>(rng.uniform_below(n));
      const auto b = static_cast<Vertex>(rng.uniform_below(n));
      if (a != b) chosen.insert(make_edge(a, b));
    }
    edges.assign(chosen.begin(), chosen.end());
  } else {
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) edges.push_back({a, b});
    }
    // Partial Fisher-Yates: the first m entries are a uniform m-subset.
    for (std::size_t i = 0; i < m; ++i) std::swap(edges[i], edges[i + rng.uniform_below(edges.size() - i)]);
    edges.resize(m);
  }
  return Graph(n, std::move(edges));
}

Graph generate_d_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0) return Graph::empty(n);
  if (d >= n) throw InfeasibleParameters("d-regular: need d < n");
  if ((n * d) % 2 != 0) throw InfeasibleParameters("d-regular: n * d must be even");
  const Rng root(seed);
  for (int attempt = 0; attempt < kRegularRestarts; ++attempt) {
    Rng rng = root.derive(static_cast<std::uint64_t>(attempt));
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v) points.insert(points.end(), d, v);
    std::set<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      stuck = true;
      // A handful of draws per pair before declaring the configuration stuck.
      for (int tries = 0; tries < 100; ++tries) {
        const std::size_t i = rng.uniform_below(points.size());
        const std::size_t j = rng.uniform_below(points.size());
        if (i == j || points[i] == points[j]) continue;
        const Edge e = make_edge(points[i], points[j]);
        if (edges.contains(e)) continue;
        edges.insert(e);
        const std::size_t hi = std::max(i, j);
        const std::size_t lo = std::min(i, j);
        std::swap(points[hi], points.back());
        points.pop_back();
        std::swap(points[lo], points.back());
        points.pop_back();
        stuck = false;
        break;
      }
    }
    if (points.empty()) return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
  throw InfeasibleParameters("d-regular: pairing model did not succeed within the restart budget");
}

Graph generate_star_forest(std::size_t n, std::size_t leaves, std::uint64_t seed) {
  if (leaves == 0) throw InfeasibleParameters("star-forest: need at least one leaf per star");
  Rng rng(seed);
  const std::vector<Vertex> order = shuffled_vertices(n, rng);
  std::vector<Edge> edges;
  for (std::size_t start = 0; start < n; start += leaves + 1) {
    const std::size_t stop = std::min(n, start + leaves + 1);
    for (std::size_t i = start + 1; i < stop; ++i) edges.push_back(make_edge(order[start], order[i]));
  }
  return Graph(n, std::move(edges));
}

Graph generate_path_union(std::size_t n, std::size_t paths, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < paths; ++p) {
    const std::vector<Vertex> order = shuffled_vertices(n, rng);
    for (std::size_t i = 1; i < order.size(); ++i) edges.push_back(make_edge(order[i - 1], order[i]));
  }
  return Graph(n, std::move(edges));
}

Graph generate(const GeneratorSpec& spec) {
  if (spec.model == "uniform-m") return generate_uniform_m(spec.n, spec.m, spec.seed);
  if (spec.model == "d-regular") return generate_d_regular(spec.n, spec.d, spec.seed);
  if (spec.model == "star-forest") return generate_star_forest(spec.n, spec.d, spec.seed);
  if (spec.model == "path-union") return generate_path_union(spec.n, spec.d, spec.seed);
  throw InfeasibleParameters("unknown model '" + spec.model + "'");
}

std::string describe(const GeneratorSpec& spec) {
  std::string out = "model=" + spec.model + " n=" + std::to_string(spec.n);
  if (spec.model == "uniform-m") {
    out += " m=" + std::to_string(spec.m);
  } else {
    out += " d=" + std::to_string(spec.d);
  }
  return out + " seed=" + std::to_string(spec.seed);
}

}  // namespace pathfree
