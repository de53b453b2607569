#pragma once

// Full colouring driver: Vizing-type refinement, an initial star colouring,
// the extraction rounds, and the endgame. Each stage occupies a disjoint
// colour range stacked on top of the previous ones.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pathfree/colouring.hpp"
#include "pathfree/extractor.hpp"
#include "pathfree/graph.hpp"
#include "pathfree/rational.hpp"
#include "pathfree/rng.hpp"

namespace pathfree {

/// Smallest beta0 (found by bisection on ln(1/beta0)) with
/// (1/beta0)^(1/30) > 2e * 360 * 60 and (1/beta0)^(1/30) > ln(5/beta0^2).
/// Roughly e^-350.
double default_beta0();

struct PipelineParams {
  long r = 2;
  long k = 3;
  Rational eta = make_rational(1, 10);
  Rational zeta = make_rational(1, 3);
  Rational rho = make_rational(2, 5);
  double beta0 = default_beta0();
  Rational c0 = exact(default_beta0()) / 576;
  std::size_t trials_per_extraction = kDefaultExtractionTrials;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool beta0_overridden = false;
  /// Reject k < 100 ln r instead of only reporting it.
  bool enforce_preconditions = false;
  /// Fault injection: colours added to every round's allowance so the
  /// budget check can be exercised. Zero in normal use.
  std::size_t extra_round_colours = 0;

  /// Sets beta0 and c0 = beta0 / 576 together and marks the override.
  void set_beta0(double value);

  /// Throws ContractViolation on broken parameter invariants.
  void validate() const;
};

enum class TerminationReason { edge_floor, degree_floor, budget, stalled };

std::string to_string(TerminationReason reason);

struct RoundTrace {
  std::size_t round_index = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t max_degree_before = 0;
  std::size_t max_degree_after = 0;
  /// floor(r rho^i / 12): extraction cap and star colour count.
  std::size_t colour_allowance = 0;
  std::size_t extraction_colours = 0;
  std::size_t star_colours = 0;
  std::size_t colours_spent = 0;
  /// r rho^i / 6
  Rational budget;
  std::vector<double> extractions;  // achieved ratios e(H)/e(F)
  bool extraction_failed = false;
  std::string diagnostic;
  /// e(F) <= eta e(G_i) after the extractions.
  bool edge_conclusion = false;
  /// Delta(G_{i+1}) <= zeta^(i+1) beta0 r ln r.
  bool degree_conclusion = false;
  bool budget_conclusion = false;
  bool degree_precondition = false;  // Delta(G_i) <= zeta^i beta0 r ln r
  std::optional<TerminationReason> termination_reason;
};

struct RoundOutcome {
  Graph g_next;
  EdgeColouring colouring;
  RoundTrace trace;
};

/// One round of the recursion on g_i: extractions (one colour each) until
/// e(F) <= eta e(g_i) or floor(r rho^i / 12) colours are spent, then a star
/// colouring with floor(r rho^i / 12) colours. Colours start at colour_base.
/// Throws InternalInvariantViolation if the round spends more than
/// r rho^i / 6 colours.
RoundOutcome run_round(const Graph& g_i, std::size_t i, const PipelineParams& params, Colour colour_base,
                       const Rng& rng);

struct StageReport {
  std::string name;
  Colour colour_base = 0;
  std::size_t colours_used = 0;
  /// Nominal share of r for the stage; nullopt when it has none.
  std::optional<Rational> budget;
  bool within_budget = true;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t max_degree_before = 0;
  std::size_t max_degree_after = 0;
};

struct PipelineReport {
  long r = 0;
  long k = 0;
  std::uint64_t seed = 0;
  double beta0 = 0.0;
  bool beta0_overridden = false;
  /// k = 3 runs with a proper edge colouring only.
  bool matching_mode = false;
  bool success = false;
  bool complete = false;
  std::size_t colours_used = 0;
  std::size_t edges = 0;
  /// e(G) <= c0 r^2 ln r k
  bool edge_precondition = false;
  /// k >= 100 ln r
  bool path_length_precondition = false;
  /// Delta(G_0) <= beta0 r ln r after the initial star step.
  bool initial_degree_bound = true;
  bool vizing_residual_bound = true;
  std::optional<TerminationReason> termination;
  std::string endgame;
  std::vector<StageReport> stages;
  std::string message;
};

struct PipelineRun {
  EdgeColouring colouring;
  std::vector<RoundTrace> traces;
  PipelineReport report;
};

/// Colours every edge of g. success means every edge is coloured and at
/// most r colours are in use; the colouring is returned either way.
PipelineRun colour_graph(const Graph& g, const PipelineParams& params);

/// "# n=", "# r=.. k=.. colours_used=..", then "u v c" in (u, v) order.
/// Throws ContractViolation unless colouring covers exactly g's edges.
void serialize_colouring(std::ostream& out, const Graph& g, const EdgeColouring& colouring, long r, long k);

struct ParsedColouring {
  Graph graph;
  EdgeColouring colouring;
  std::optional<long> r;
  std::optional<long> k;
};

ParsedColouring parse_colouring(std::istream& in);

}  // namespace pathfree
