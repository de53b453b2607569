#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pathfree/generators.hpp"
#include "pathfree/pipeline.hpp"
#include "pathfree/verifier.hpp"

using namespace pathfree;

namespace {

PipelineParams desk(long r, long k, std::uint64_t seed = 0) {
  PipelineParams p;
  p.r = r;
  p.k = k;
  p.seed = seed;
  p.trials_per_extraction = 20;
  p.set_beta0(0.5);
  return p;
}

Graph triangles(std::size_t count) {
  std::vector<Edge> edges;
  for (Vertex t = 0; t < count; ++t) {
    edges.push_back({3 * t, 3 * t + 1});
    edges.push_back({3 * t + 1, 3 * t + 2});
    edges.push_back({3 * t, 3 * t + 2});
  }
  return Graph(3 * count, edges);
}

}  // namespace

TEST_CASE("default beta0 sits on the boundary of the closing inequalities") {
  const double b = default_beta0();
  const double y = -std::log(b);
  CHECK(y == doctest::Approx(30 * std::log(2 * std::exp(1.0) * 360 * 60)).epsilon(1e-9));
  CHECK(std::exp(y / 30) > std::log(5 / (b * b)));
}

TEST_CASE("parameter validation") {
  PipelineParams p = desk(8, 6);
  CHECK_NOTHROW(p.validate());
  p.rho = make_rational(1, 2);
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = desk(8, 6);
  p.eta = make_rational(1, 5);
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = desk(8, 6);
  p.c0 = 1;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = desk(8, 2);
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = desk(8, 6);
  p.enforce_preconditions = true;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p.k = 300;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("empty graph") {
  const PipelineRun run = colour_graph(Graph::empty(5), desk(8, 6));
  CHECK(run.report.success);
  CHECK(run.colouring.empty());
}

TEST_CASE("single edge with r = 2, k = 3") {
  const Graph g(2, {{0, 1}});
  PipelineParams p = desk(2, 3);
  const PipelineRun run = colour_graph(g, p);
  CHECK(run.report.success);
  CHECK(run.report.matching_mode);
  CHECK(run.colouring.colours_used() == 1);
  CHECK(verify(g, run.colouring, 2, 3).verdict == Verdict::pass);
}

TEST_CASE("disjoint triangles, r = 12, k = 3") {
  const Graph g = triangles(100);
  const PipelineRun run = colour_graph(g, desk(12, 3));
  CHECK(run.report.success);
  CHECK(run.colouring.colours_used() == 3);
  CHECK(verify(g, run.colouring, 12, 3).verdict == Verdict::pass);
}

TEST_CASE("run_round on an empty graph") {
  const RoundOutcome out = run_round(Graph::empty(10), 0, desk(32, 6), 0, Rng(1));
  CHECK(out.colouring.empty());
  CHECK(out.trace.colours_spent == 0);
}

TEST_CASE("run_round without an allowance only runs the star step") {
  const Graph g = generate_uniform_m(50, 200, 3);
  const RoundOutcome out = run_round(g, 6, desk(32, 6), 0, Rng(1));
  CHECK(out.trace.colour_allowance == 0);
  CHECK(out.trace.extractions.empty());
  CHECK(out.trace.colours_spent == 0);
  CHECK(out.g_next == g);
}

TEST_CASE("seeded round on G(200, 400), r = 16, k = 12") {
  const Graph g = generate_uniform_m(200, 400, 11);
  const PipelineParams p = desk(16, 12, 11);
  const RoundOutcome out = run_round(g, 0, p, 5, Rng(11));
  const RoundTrace& t = out.trace;
  CHECK(t.colours_spent <= static_cast<std::size_t>(floor(Rational(16) / 6).get_ui()));
  CHECK(Rational(static_cast<unsigned long>(t.colours_spent)) <= t.budget);
  CHECK(out.colouring.size() + out.g_next.edge_count() == g.edge_count());
  CHECK(subtract(g, out.g_next).edge_count() == out.colouring.size());
  if (!out.colouring.empty()) CHECK(*out.colouring.palette().begin() >= 5);
  const VerificationReport rep = verify(subtract(g, out.g_next), out.colouring, 16, 12);
  CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("rounds run on dense graphs with a desk beta0") {
  const Graph g = generate_uniform_m(400, 8000, 2);
  const PipelineRun run = colour_graph(g, desk(32, 16, 2));
  REQUIRE(run.traces.size() >= 2);
  CHECK(run.report.complete);
  for (std::size_t i = 0; i < run.traces.size(); ++i) {
    const RoundTrace& t = run.traces[i];
    CHECK(t.round_index == i);
    CHECK(t.edges_after < t.edges_before);
    CHECK(Rational(static_cast<unsigned long>(t.colours_spent)) <= t.budget);
    if (i > 0) CHECK(t.edges_before == run.traces[i - 1].edges_after);
    if (t.edge_conclusion) CHECK(t.extractions.size() <= t.colour_allowance);
  }
  // The verifier is the ground truth whatever the budget outcome.
  const VerificationReport rep = verify(g, run.colouring, 1000, 16);
  CHECK(rep.verdict == Verdict::pass);
  std::size_t spent = 0;
  for (const auto& s : run.report.stages) spent += s.colours_used;
  CHECK(spent == run.colouring.colours_used());
}

TEST_CASE("a round without a certified extraction stops the recursion") {
  const Graph g = generate_uniform_m(400, 8000, 2);
  const PipelineRun run = colour_graph(g, desk(32, 12, 2));
  REQUIRE(run.traces.size() == 1);
  CHECK(run.traces[0].extraction_failed);
  CHECK(run.report.termination == TerminationReason::stalled);
  CHECK(run.report.complete);
  CHECK(verify(g, run.colouring, 1000, 12).verdict == Verdict::pass);
}

TEST_CASE("successful runs pass the verifier") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = generate_path_union(300, 2, seed);
    const PipelineRun run = colour_graph(g, desk(32, 6, seed));
    CHECK(run.report.success);
    CHECK(run.colouring.colours_used() <= 32);
    CHECK(verify(g, run.colouring, 32, 6).verdict == Verdict::pass);
  }
}

TEST_CASE("runs are deterministic under the seed") {
  const Graph g = generate_uniform_m(150, 1500, 8);
  const PipelineRun a = colour_graph(g, desk(24, 8, 4));
  const PipelineRun b = colour_graph(g, desk(24, 8, 4));
  CHECK(a.colouring == b.colouring);
}

TEST_CASE("colouring file round trip") {
  const Graph g(4, {{0, 1}, {2, 3}, {1, 2}});
  EdgeColouring c;
  c.assign({0, 1}, 0);
  c.assign({1, 2}, 1);
  c.assign({2, 3}, 0);
  std::ostringstream out;
  serialize_colouring(out, g, c, 2, 3);
  CHECK(out.str() == "# n=4\n# r=2 k=3 colours_used=2\n0 1 0\n1 2 1\n2 3 0\n");
  std::istringstream in(out.str());
  const ParsedColouring back = parse_colouring(in);
  CHECK(back.graph == g);
  CHECK(back.colouring == c);
  CHECK(back.r == 2L);
  CHECK(back.k == 3L);

  std::ostringstream empty;
  serialize_colouring(empty, Graph::empty(0), EdgeColouring{}, 4, 5);
  CHECK(empty.str() == "# n=0\n# r=4 k=5 colours_used=0\n");

  EdgeColouring partial;
  partial.assign({0, 1}, 0);
  std::ostringstream sink;
  CHECK_THROWS_AS(serialize_colouring(sink, g, partial, 2, 3), ContractViolation);

  std::istringstream dup("0 1 0\n1 0 2\n");
  CHECK_THROWS_AS(parse_colouring(dup), ParseError);
}
