#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "pathfree/graph.hpp"
#include "pathfree/rational.hpp"

namespace pathfree {

using Colour = std::uint32_t;

/// Partial map from edges to colour indices.
class EdgeColouring {
 public:
  /// Throws ContractViolation if the edge already has a colour.
  void assign(const Edge& e, Colour c);

  std::optional<Colour> colour_of(const Edge& e) const;
  bool covers(const Edge& e) const { return assignments_.contains(e); }

  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }

  /// Number of distinct colours in use.
  std::size_t colours_used() const;
  std::set<Colour> palette() const;
  std::optional<Colour> max_colour() const;

  const std::map<Edge, Colour>& assignments() const { return assignments_; }

  /// Adds every assignment of `other`; the two must be edge-disjoint.
  void merge(const EdgeColouring& other);

  /// Same classes renumbered onto base, base + 1, ... in increasing order of
  /// the original colour index.
  EdgeColouring compacted(Colour base = 0) const;

  /// True iff every edge of g is coloured and nothing else is.
  bool covers_exactly(const Graph& g) const;

  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;

 private:
  std::map<Edge, Colour> assignments_;
};

/// Outcome of a refinement step: the coloured part plus the uncoloured
/// residual. Coloured and residual edges partition the input.
struct RefinementResult {
  Graph residual;
  EdgeColouring colouring;
  std::size_t colours_used = 0;
  /// Colour indices the step was allowed to occupy, starting at colour_base.
  std::size_t colour_slots = 0;
  bool within_budget = true;
};

/// Proper edge colouring with at most max_degree + 1 colours (Misra-Gries
/// fan rotation). Colour classes are matchings.
EdgeColouring proper_edge_colouring(const Graph& g);

struct VizingRefinement : RefinementResult {
  /// Vertices of degree <= r/7.
  VertexSet low_degree;
  std::size_t inner_colours = 0;
  std::size_t bipartite_colours = 0;
  /// Whether e(g) <= (r^2 ln r) k / 56 held, and if so whether the residual
  /// kept at most (r ln r) k / 4 non-isolated vertices.
  bool edge_precondition = false;
  bool residual_vertex_bound = true;
};

/// Colours every edge touching a vertex of degree <= r/7 without creating a
/// monochromatic path on 4 vertices. The residual is the subgraph induced by
/// the remaining high-degree vertices. within_budget is false when more than
/// r/3 colours were needed (small r).
VizingRefinement vizing_type_refinement(const Graph& g, long r, long k, Colour colour_base);

struct StarRefinement : RefinementResult {
  /// 8 e(g) / (k s)
  Rational threshold;
  /// Non-isolated vertices with degree >= threshold.
  VertexSet high_degree;
  /// Centres grouped by colour; each group has at most floor(k/3) vertices.
  std::vector<VertexSet> centre_groups;
  /// High-degree vertices that did not fit into s groups. Only possible for
  /// k = 5; their edges stay in the residual.
  VertexSet overflow;
  bool degree_bound_met = true;
};

/// Colours all edges at vertices of degree >= 8 e(g) / (k s) with at most s
/// colours so that each colour class has at most floor(k/3) centres covering
/// all its edges; such a class contains no path on k vertices.
/// Requires s >= 0 and k >= 4 (a two-leaf star is already a path on 3
/// vertices). s = 0 colours nothing.
StarRefinement star_colouring(const Graph& g, long s, long k, Colour colour_base);

}  // namespace pathfree
