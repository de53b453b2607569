#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathfree/colouring.hpp"
#include "pathfree/graph.hpp"

namespace pathfree {

/// Throughout, P_k is the path on k vertices (k - 1 edges).

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExactPathCap = 24;

/// One connected component of a colour class. `local` is the component
/// relabelled onto [0, vertices.size()); local id i is vertices[i].
struct Component {
  Colour colour = 0;
  VertexSet vertices;
  Graph local;
};

std::map<Colour, std::vector<Component>> monochromatic_components(const Graph& g, const EdgeColouring& colouring);

/// Number of vertices on a longest simple path, by dynamic programming over
/// (vertex subset, endpoint) states. Throws OracleRefusal above `cap`
/// vertices.
std::size_t longest_path_exact(const Graph& component, std::size_t cap = kExactPathCap);

/// A simple path with exactly `length` vertices, if one exists (same DP,
/// stopped at subsets of that size).
std::optional<std::vector<Vertex>> find_path_exact(const Graph& component, std::size_t length,
                                                   std::size_t cap = kExactPathCap);

enum class Verdict { pass, fail, indeterminate };

std::string to_string(Verdict v);

/// How a component was shown free of P_k, or shown to contain one.
enum class Certificate { order, matching_bound, tree_diameter, exact_dp, exhaustive_search, witness, none };

std::string to_string(Certificate c);

struct ColourStats {
  Colour colour = 0;
  std::size_t component_count = 0;
  std::size_t max_component_order = 0;
  /// Largest longest-path bound over the class; exact when path_bound_exact.
  std::size_t path_bound = 0;
  bool path_bound_exact = true;
};

struct Witness {
  Colour colour = 0;
  std::vector<Vertex> path;
};

struct VerificationReport {
  Verdict verdict = Verdict::pass;
  long r = 0;
  long k = 0;
  std::size_t colours_used = 0;
  bool colour_budget_ok = true;
  /// Every edge of the graph carries a colour.
  bool complete = true;
  std::size_t uncoloured_edges = 0;
  std::optional<Witness> worst_component;
  std::vector<ColourStats> per_colour;
  std::vector<Witness> failures;
  std::map<Certificate, std::size_t> certificates;
  std::size_t undecided_components = 0;
};

struct VerifyOptions {
  std::size_t exact_cap = kExactPathCap;
  /// Node budget for the exhaustive depth-first search used on components
  /// too large for the subset DP.
  std::size_t search_budget = 2'000'000;
};

/// Pass iff every monochromatic component is certified free of P_k and at
/// most r colours are used. Fail carries a witness path with k vertices (or
/// a colour-budget violation). Indeterminate only when a component of order
/// >= k could not be decided within the configured limits.
VerificationReport verify(const Graph& g, const EdgeColouring& colouring, long r, long k,
                          const VerifyOptions& options = {});

}  // namespace pathfree
