#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathfree/rng.hpp"

namespace pathfree {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalises endpoint order. Throws ContractViolation on a self-loop.
Edge make_edge(Vertex a, Vertex b);

/// A precondition or structural invariant was broken by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An invariant the algorithms themselves are supposed to guarantee failed.
class InternalInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

VertexSet make_vertex_set(std::vector<Vertex> vertices);

/// Simple undirected graph on the dense vertex range [0, vertex_count).
/// Immutable once built; all subgraph operations return new values.
class Graph {
 public:
  Graph() = default;

  /// Duplicate edges collapse to one. Throws ContractViolation for
  /// self-loops or endpoints outside the vertex range.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  static Graph empty(std::size_t vertex_count) { return Graph(vertex_count, {}); }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edges() const { return !edges_.empty(); }

  /// Edges in lexicographic (u, v) order.
  std::span<const Edge> edges() const { return edges_; }

  /// Sorted neighbour list.
  std::span<const Vertex> neighbours(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const { return max_degree_; }

  bool contains(const Edge& e) const;
  /// Position of `e` in edges(), if present.
  std::optional<std::size_t> edge_index(const Edge& e) const;

  /// Number of vertices with at least one incident edge.
  std::size_t non_isolated_vertex_count() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t max_degree_ = 0;
};

/// Edges of g not in h. h must be a subgraph of g on the same vertex range.
Graph subtract(const Graph& g, const Graph& h);

/// Edge union of two graphs on the same vertex range.
Graph unite(const Graph& g, const Graph& h);

/// Edges of g with one endpoint in a and the other in b. a and b must be
/// disjoint.
Graph induced_bipartite(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Edges of g with both endpoints in `vertices`. The vertex range is kept.
Graph induced_subgraph(const Graph& g, const VertexSet& vertices);

/// Edges of g with at least one endpoint in `vertices`.
Graph incident_edges(const Graph& g, const VertexSet& vertices);

/// Disjoint vertex sets whose union is `universe`.
struct VertexPartition {
  std::vector<VertexSet> parts;
  VertexSet universe;

  std::size_t size() const { return parts.size(); }
  bool is_valid() const;
};

/// Result of random_balanced_bipartition. `below_half` is set when the trial
/// budget ran out before a split with 2 * crossing >= e(g) was found; the
/// best split seen is still returned.
struct Bipartition {
  VertexSet a;
  VertexSet b;
  std::size_t crossing = 0;
  std::size_t trials = 0;
  bool below_half = false;
};

inline constexpr int kBipartitionTrialBudget = 64;

/// Splits `restricted_to` into a (|a| = ceil(|restricted_to| / 2)) and b,
/// resampling uniformly until the number of edges with exactly one endpoint
/// in a is at least e(g) / 2.
Bipartition random_balanced_bipartition(const Graph& g, const VertexSet& restricted_to, Rng& rng,
                                        int trial_budget = kBipartitionTrialBudget);

/// Edge-list text format: optional "# n=<count>" header, "u v" per line,
/// '#' starts a comment.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

/// Writes the header, any extra comment lines, then one edge per line.
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});

}  // namespace pathfree
