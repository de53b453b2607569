#include <doctest.h>

#include <sstream>

#include "pathfree/generators.hpp"

using namespace pathfree;

TEST_CASE("uniform-m") {
  CHECK(generate_uniform_m(10, 0, 1).edge_count() == 0);
  CHECK(generate_uniform_m(10, 17, 1).edge_count() == 17);
  CHECK(generate_uniform_m(10, 45, 1).edge_count() == 45);
  CHECK(generate_uniform_m(10, 40, 1).edge_count() == 40);
  CHECK_THROWS_AS(generate_uniform_m(10, 46, 1), InfeasibleParameters);
  CHECK(generate_uniform_m(50, 100, 4) == generate_uniform_m(50, 100, 4));
  CHECK_FALSE(generate_uniform_m(50, 100, 4) == generate_uniform_m(50, 100, 5));
}

TEST_CASE("d-regular") {
  const Graph g = generate_d_regular(6, 2, 0);
  for (Vertex v = 0; v < 6; ++v) CHECK(g.degree(v) == 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph h = generate_d_regular(100, 7, seed);
    for (Vertex v = 0; v < 100; ++v) REQUIRE(h.degree(v) == 7);
  }
  CHECK_THROWS_AS(generate_d_regular(5, 3, 0), InfeasibleParameters);
  CHECK_THROWS_AS(generate_d_regular(4, 4, 0), InfeasibleParameters);
  CHECK(generate_d_regular(5, 0, 0).edge_count() == 0);
}

TEST_CASE("star forest and path union") {
  const Graph s = generate_star_forest(13, 4, 3);
  CHECK(s.edge_count() == 4 + 4 + 2);
  CHECK(s.max_degree() == 4);
  CHECK_THROWS_AS(generate_star_forest(5, 0, 0), InfeasibleParameters);
  const Graph p = generate_path_union(30, 3, 3);
  CHECK(p.max_degree() <= 6);
  CHECK(generate_path_union(30, 1, 3).edge_count() == 29);
}

TEST_CASE("dispatch and description") {
  GeneratorSpec spec{"d-regular", 6, 0, 2, 9};
  CHECK(generate(spec) == generate_d_regular(6, 2, 9));
  CHECK(describe(spec) == "model=d-regular n=6 d=2 seed=9");
  spec.model = "nope";
  CHECK_THROWS_AS(generate(spec), InfeasibleParameters);
}
