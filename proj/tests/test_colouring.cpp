#include <doctest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "pathfree/colouring.hpp"
#include "pathfree/generators.hpp"

using namespace pathfree;

namespace {

bool is_proper(const Graph& g, const EdgeColouring& c) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<Colour> seen;
    for (Vertex w : g.neighbours(v)) seen.push_back(*c.colour_of(make_edge(v, w)));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

Graph from_mask(std::size_t n, unsigned mask) {
  std::vector<Edge> edges;
  unsigned bit = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b, ++bit) {
      if (mask >> bit & 1U) edges.push_back({a, b});
    }
  }
  return Graph(n, edges);
}

}  // namespace

TEST_CASE("edge colouring bookkeeping") {
  EdgeColouring c;
  c.assign({0, 1}, 5);
  c.assign({1, 2}, 9);
  c.assign({2, 3}, 5);
  CHECK_THROWS_AS(c.assign({0, 1}, 1), ContractViolation);
  CHECK(c.colours_used() == 2);
  CHECK(c.max_colour() == 9U);
  const EdgeColouring packed = c.compacted(3);
  CHECK(packed.colour_of({0, 1}) == 3U);
  CHECK(packed.colour_of({1, 2}) == 4U);
  CHECK(packed.colour_of({2, 3}) == 3U);
  CHECK(c.covers_exactly(Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
  CHECK_FALSE(c.covers_exactly(Graph(4, {{0, 1}, {1, 2}})));

  EdgeColouring other;
  other.assign({1, 2}, 0);
  CHECK_THROWS_AS(c.merge(other), ContractViolation);
}

TEST_CASE("proper colouring of every graph on 5 vertices") {
  for (unsigned mask = 0; mask < (1U << 10); ++mask) {
    const Graph g = from_mask(5, mask);
    const EdgeColouring c = proper_edge_colouring(g);
    REQUIRE(c.covers_exactly(g));
    REQUIRE(is_proper(g, c));
    REQUIRE(c.colours_used() <= g.max_degree() + 1);
  }
}

TEST_CASE("proper colouring of larger random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_uniform_m(60, 400, seed);
    const EdgeColouring c = proper_edge_colouring(g);
    CHECK(c.covers_exactly(g));
    CHECK(is_proper(g, c));
    CHECK(c.colours_used() <= g.max_degree() + 1);
  }
  const Graph k9 = generate_uniform_m(9, 36, 0);
  CHECK(proper_edge_colouring(k9).colours_used() <= 9);
}

TEST_CASE("star colouring: nothing to do") {
  const Graph g(4, {{0, 1}});
  CHECK(star_colouring(g, 0, 6, 0).colouring.empty());
  CHECK(star_colouring(Graph::empty(3), 2, 6, 0).residual.edge_count() == 0);
  CHECK_THROWS_AS(star_colouring(g, 1, 3, 0), ContractViolation);
}

TEST_CASE("star colouring classes are small star forests") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const std::size_t n = 4 + rng.uniform_below(7);
    const std::size_t pairs = n * (n - 1) / 2;
    const Graph g = generate_uniform_m(n, rng.uniform_below(pairs + 1), seed);
    const long k = 4 + static_cast<long>(rng.uniform_below(9));
    const long s = static_cast<long>(rng.uniform_below(5));
    const StarRefinement star = star_colouring(g, s, k, 10);

    EdgeColouring all = star.colouring;
    CHECK(star.residual.edge_count() + all.size() == g.edge_count());
    CHECK(subtract(g, star.residual).edge_count() == all.size());
    CHECK(static_cast<long>(star.colouring.colours_used()) <= s);
    CHECK(oracle::longest_mono_path(g, star.colouring) < static_cast<std::size_t>(k));
    for (const auto& group : star.centre_groups) CHECK(static_cast<long>(group.size()) <= k / 3);
    if (star.overflow.empty() && g.has_edges() && s > 0) {
      CHECK(Rational(static_cast<unsigned long>(star.residual.max_degree())) <= star.threshold);
    }
    for (const auto& [e, c] : star.colouring.assignments()) {
      REQUIRE(c >= 10);
      const VertexSet& centres = star.centre_groups.at(c - 10);
      CHECK((std::binary_search(centres.begin(), centres.end(), e.u) ||
             std::binary_search(centres.begin(), centres.end(), e.v)));
    }
  }
}

TEST_CASE("star colouring overflow at k = 5") {
  const Graph k5 = generate_uniform_m(5, 10, 0);
  const StarRefinement star = star_colouring(k5, 4, 5, 0);
  // threshold 8 * 10 / 20 = 4: all five vertices are high, four groups of one.
  CHECK(star.high_degree.size() == 5);
  CHECK(star.overflow.size() == 1);
  // Its edges all lead to centres, so nothing is left over here.
  CHECK(star.residual.edge_count() == 0);
  CHECK(star.degree_bound_met);
  CHECK(oracle::longest_mono_path(k5, star.colouring) < 5);
}

TEST_CASE("Vizing-type refinement") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = generate_uniform_m(40, 150, seed);
    const long r = 35;
    const VizingRefinement viz = vizing_type_refinement(g, r, 6, 2);
    CHECK(viz.residual.edge_count() + viz.colouring.size() == g.edge_count());
    std::vector<char> low(g.vertex_count(), 0);
    for (Vertex v : viz.low_degree) {
      low[v] = 1;
      CHECK(7 * g.degree(v) <= static_cast<std::size_t>(r));
    }
    for (const auto& [e, c] : viz.colouring.assignments()) CHECK((low[e.u] || low[e.v]));
    for (const Edge& e : viz.residual.edges()) CHECK((!low[e.u] && !low[e.v]));
    CHECK(oracle::longest_mono_path(g, viz.colouring) <= 3);
    CHECK(viz.colouring.colours_used() == viz.inner_colours + viz.bipartite_colours);
    CHECK(viz.within_budget == (3 * viz.colours_used <= static_cast<std::size_t>(r)));
  }
  CHECK_THROWS_AS(vizing_type_refinement(Graph::empty(2), 0, 5, 0), ContractViolation);
}
