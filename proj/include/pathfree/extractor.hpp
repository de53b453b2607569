#pragma once

// Extraction of large subgraphs free of P_k (the path on k vertices).
//
// One extraction round splits a vertex set V into halves A and V \ A, puts
// every vertex of A into one of q bins uniformly at random, and sends each
// vertex x of B = (V \ A) u U to the bin holding most of its neighbours. The
// union H of the bipartite graphs G[A_i, B_i] keeps, per vertex of B, the
// maximum load of a balls-and-bins experiment, which is far more than the
// 1/q share a blind partition would keep.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pathfree/graph.hpp"
#include "pathfree/rational.hpp"
#include "pathfree/rng.hpp"

namespace pathfree {

/// How an extracted subgraph was shown to be P_k-free.
enum class CertificationTier {
  none,
  part_size,        // every |A_i| < k/2 - 1
  component_order,  // every component of H has fewer than k vertices
};

std::string to_string(CertificationTier tier);

struct ExtractionResult {
  Graph h;
  VertexPartition a_parts;
  VertexPartition b_parts;
  std::size_t q = 0;
  bool certified = false;
  CertificationTier tier = CertificationTier::none;
  /// Edges between A and B in the balanced split of this round.
  std::size_t crossing = 0;
  bool bipartition_below_half = false;
  std::size_t trials_run = 0;
  /// Trial index that produced h.
  std::size_t trial_index = 0;
};

/// Sends each x in b to the part A_i holding most of its neighbours; ties go
/// to the lowest part index. The result has a_parts.size() parts.
VertexPartition greedy_bin_assignment(const Graph& g, const VertexPartition& a_parts, const VertexSet& b);

/// floor((6/k) * ceil(|v|/2)), clamped to at least 1.
std::size_t extraction_bin_count(std::size_t v_size, long k);

/// One randomised round on (g, v, u) with q bins; the result is certified
/// iff one of the two tiers holds.
ExtractionResult extraction_trial(const Graph& g, const VertexSet& v, const VertexSet& u, long k, std::size_t q,
                                  Rng& rng);

inline constexpr std::size_t kDefaultExtractionTrials = 200;

struct FindOptions {
  std::size_t trials = kDefaultExtractionTrials;
  /// Worker threads for independent trials. Results do not depend on it.
  unsigned threads = 1;
};

/// Runs up to `trials` independent rounds (trial i uses rng.derive(i)) and
/// returns the certified H with the most edges, ties to the lowest trial.
/// When no round certifies, returns the largest uncertified attempt with
/// certified = false.
///
/// Requires u independent in g, every edge of g touching v, and k >= 4.
ExtractionResult find_pk_free_subgraph(const Graph& g, const VertexSet& v, const VertexSet& u, long k,
                                       const Rng& rng, const FindOptions& options = {});

/// Degree-class split of a graph into approximately regular edge classes
/// E_1..E_T plus a low-degree remainder R.
struct DegreeClass {
  VertexSet vertices;  // V_j
  Graph edges;         // E_j: remaining edges incident to V_j at peel time
};

struct Decomposition {
  std::vector<DegreeClass> classes;
  VertexSet residual_vertices;  // V_R
  Graph residual_edges;         // R
  Rational c1;
  std::size_t t_max = 0;  // T
  std::size_t max_degree = 0;
};

/// V_j collects unclassified vertices whose degree in the not-yet-peeled
/// graph lies in [c1^j D, c1^(j-1) D] (D the maximum degree of g); E_j is
/// every remaining edge at V_j. T >= 1 is minimal with D c1^T <=
/// degree_floor. Empty graphs give T = 0.
Decomposition degree_class_decompose(const Graph& g, const Rational& c1, const Rational& degree_floor);

/// e^-2 and e^-1 as exact rationals (the binary64 values).
Rational default_c1();
Rational default_c2();

enum class SelectedPart { none, degree_class, residual };

struct KeyLemmaResult {
  ExtractionResult extraction;
  SelectedPart selected = SelectedPart::none;
  std::size_t class_index = 0;  // j, 1-based, when a degree class was chosen
  std::size_t selected_edges = 0;
  /// Edges of R outside V_R; always zero since peeled vertices lose all
  /// their edges.
  std::size_t residual_edge_loss = 0;
  double achieved_ratio = 0.0;  // e(H) / e(g)
  double target_ratio = 0.0;    // 60 / (beta^0.9 r)
  bool max_degree_precondition = true;  // D <= beta r ln r
};

/// Decomposes g (c1 = e^-2, floor r), picks the first class with
/// e(E_j) >= c2^j e(g) (c2 = e^-1) or else the remainder if
/// e(R) >= e(g)/3, and extracts from it. Throws InternalInvariantViolation
/// if neither part is heavy.
KeyLemmaResult key_lemma_extract(const Graph& g, double beta, long r, long k, const Rng& rng,
                                 const FindOptions& options = {});

}  // namespace pathfree
