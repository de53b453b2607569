#include "pathfree/extractor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace pathfree {

std::string to_string(CertificationTier tier) {
  switch (tier) {
    case CertificationTier::none: return "none";
    case CertificationTier::part_size: return "part_size";
    case CertificationTier::component_order: return "component_order";
  }
  return "?";
}

VertexPartition greedy_bin_assignment(const Graph& g, const VertexPartition& a_parts, const VertexSet& b) {
  const std::size_t q = a_parts.size();
  std::vector<long> part_of(g.vertex_count(), -1);
  for (std::size_t i = 0; i < q; ++i) {
    for (Vertex x : a_parts.parts[i]) part_of[x] = static_cast<long>(i);
  }
  VertexPartition out;
  out.parts.resize(q);
  out.universe = b;
  if (q == 0) {
    if (!b.empty()) throw ContractViolation("greedy_bin_assignment needs at least one part");
    return out;
  }
  std::vector<std::size_t> hits(q, 0);
  for (Vertex x : b) {
    if (part_of[x] >= 0) throw ContractViolation("greedy_bin_assignment: b meets a_parts");
    std::fill(hits.begin(), hits.end(), 0);
    for (Vertex y : g.neighbours(x)) {
      if (part_of[y] >= 0) ++hits[static_cast<std::size_t>(part_of[y])];
    }
    // max_element returns the first maximum, i.e. the lowest index on ties.
    const auto best = static_cast<std::size_t>(std::max_element(hits.begin(), hits.end()) - hits.begin());
    out.parts[best].push_back(x);
  }
  return out;
}

std::size_t extraction_bin_count(std::size_t v_size, long k) {
  if (k < 1) throw ContractViolation("extraction_bin_count needs k >= 1");
  const std::size_t half = (v_size + 1) / 2;
  return std::max<std::size_t>(1, (6 * half) / static_cast<std::size_t>(k));
}

namespace {

bool components_below(const Graph& h, std::size_t k) {
  std::vector<std::size_t> parent(h.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::size_t> size(h.vertex_count(), 1);
  for (const Edge& e : h.edges()) {
    std::size_t a = find(e.u);
    std::size_t b = find(e.v);
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    if (size[a] >= k) return false;
  }
  return true;
}

bool better(const ExtractionResult& a, const ExtractionResult& b) {
  if (a.certified != b.certified) return a.certified;
  if (a.h.edge_count() != b.h.edge_count()) return a.h.edge_count() > b.h.edge_count();
  return a.trial_index < b.trial_index;
}

void check_extraction_input(const Graph& g, const VertexSet& v, const VertexSet& u, long k) {
  if (k < 4) throw ContractViolation("P_k-free extraction needs k >= 4");
  std::vector<char> in_v(g.vertex_count(), 0);
  std::vector<char> in_u(g.vertex_count(), 0);
  for (Vertex x : v) {
    if (x >= g.vertex_count()) throw ContractViolation("v leaves the vertex range");
    in_v[x] = 1;
  }
  for (Vertex x : u) {
    if (x >= g.vertex_count()) throw ContractViolation("u leaves the vertex range");
    if (in_v[x]) throw ContractViolation("v and u overlap");
    in_u[x] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (in_u[e.u] && in_u[e.v]) throw ContractViolation("u is not independent");
    if (!in_v[e.u] && !in_v[e.v]) throw ContractViolation("an edge misses v");
  }
}

}  // namespace

ExtractionResult extraction_trial(const Graph& g, const VertexSet& v, const VertexSet& u, long k, std::size_t q,
                                  Rng& rng) {
  ExtractionResult out;
  out.q = q;
  const Bipartition split = random_balanced_bipartition(g, v, rng);
  out.crossing = split.crossing;
  out.bipartition_below_half = split.below_half;

  out.a_parts.universe = split.a;
  out.a_parts.parts.resize(q);
  for (Vertex x : split.a) out.a_parts.parts[rng.uniform_below(q)].push_back(x);

  VertexSet b = split.b;
  b.insert(b.end(), u.begin(), u.end());
  b = make_vertex_set(std::move(b));
  out.b_parts = greedy_bin_assignment(g, out.a_parts, b);

  std::vector<long> a_part(g.vertex_count(), -1);
  std::vector<long> b_part(g.vertex_count(), -1);
  for (std::size_t i = 0; i < q; ++i) {
    for (Vertex x : out.a_parts.parts[i]) a_part[x] = static_cast<long>(i);
    for (Vertex x : out.b_parts.parts[i]) b_part[x] = static_cast<long>(i);
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    const bool forward = a_part[e.u] >= 0 && a_part[e.u] == b_part[e.v];
    const bool backward = a_part[e.v] >= 0 && a_part[e.v] == b_part[e.u];
    if (forward || backward) kept.push_back(e);
  }
  out.h = Graph(g.vertex_count(), std::move(kept));

  const bool small_parts = std::all_of(out.a_parts.parts.begin(), out.a_parts.parts.end(),
                                       [k](const VertexSet& part) { return 2 * static_cast<long>(part.size()) < k - 2; });
  if (small_parts) {
    out.tier = CertificationTier::part_size;
  } else if (components_below(out.h, static_cast<std::size_t>(k))) {
    out.tier = CertificationTier::component_order;
  }
  out.certified = out.tier != CertificationTier::none;
  return out;
}

ExtractionResult find_pk_free_subgraph(const Graph& g, const VertexSet& v, const VertexSet& u, long k,
                                       const Rng& rng, const FindOptions& options) {
  check_extraction_input(g, v, u, k);
  const std::size_t q = extraction_bin_count(v.size(), k);
  const std::size_t trials = std::max<std::size_t>(options.trials, 1);
  const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(trials));

  std::vector<std::optional<ExtractionResult>> best(workers);
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < trials; i += workers) {
      Rng trial_rng = rng.derive(i);
      ExtractionResult r = extraction_trial(g, v, u, k, q, trial_rng);
      r.trial_index = i;
      if (!best[worker] || better(r, *best[worker])) best[worker] = std::move(r);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::optional<ExtractionResult> overall;
  for (auto& b : best) {
    if (b && (!overall || better(*b, *overall))) overall = std::move(b);
  }
  overall->trials_run = trials;
  return std::move(*overall);
}

Rational default_c1() { return exact(std::exp(-2.0)); }
Rational default_c2() { return exact(std::exp(-1.0)); }

Decomposition degree_class_decompose(const Graph& g, const Rational& c1, const Rational& degree_floor) {
  if (c1 <= 0 || c1 >= 1) throw ContractViolation("degree_class_decompose needs 0 < c1 < 1");
  Decomposition out;
  out.c1 = c1;
  out.max_degree = g.max_degree();
  const Rational top(static_cast<unsigned long>(out.max_degree));
  if (out.max_degree == 0) {
    out.residual_edges = g;
    out.residual_vertices.resize(g.vertex_count());
    std::iota(out.residual_vertices.begin(), out.residual_vertices.end(), 0);
    return out;
  }

  std::size_t t = 1;
  Rational band_low = top * c1;
  while (band_low > degree_floor) {
    band_low *= c1;
    ++t;
  }
  out.t_max = t;

  std::vector<std::size_t> degree(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) degree[x] = g.degree(x);
  std::vector<char> classified(g.vertex_count(), 0);
  std::vector<char> removed(g.edge_count(), 0);

  Rational hi = top;
  for (std::size_t j = 1; j <= t; ++j) {
    const Rational lo = hi * c1;
    DegreeClass cls;
    std::vector<char> in_class(g.vertex_count(), 0);
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (classified[x]) continue;
      const Rational d(static_cast<unsigned long>(degree[x]));
      if (d > hi) throw InternalInvariantViolation("vertex degree above its band during peeling");
      if (d >= lo) {
        cls.vertices.push_back(x);
        in_class[x] = 1;
        classified[x] = 1;
      }
    }
    std::vector<Edge> edges;
    const auto all = g.edges();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (removed[i] || !(in_class[all[i].u] || in_class[all[i].v])) continue;
      removed[i] = 1;
      edges.push_back(all[i]);
      --degree[all[i].u];
      --degree[all[i].v];
    }
    cls.edges = Graph(g.vertex_count(), std::move(edges));
    out.classes.push_back(std::move(cls));
    hi = lo;
  }

  std::vector<Edge> rest;
  const auto all = g.edges();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!removed[i]) rest.push_back(all[i]);
  }
  out.residual_edges = Graph(g.vertex_count(), std::move(rest));
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (!classified[x]) out.residual_vertices.push_back(x);
  }
  return out;
}

KeyLemmaResult key_lemma_extract(const Graph& g, double beta, long r, long k, const Rng& rng,
                                 const FindOptions& options) {
  if (r < 2) throw ContractViolation("key_lemma_extract needs r >= 2");
  if (!(beta > 0.0)) throw ContractViolation("key_lemma_extract needs beta > 0");
  KeyLemmaResult out;
  const double rd = static_cast<double>(r);
  out.target_ratio = 60.0 / (std::pow(beta, 0.9) * rd);
  out.max_degree_precondition = static_cast<double>(g.max_degree()) <= beta * rd * std::log(rd);

  if (!g.has_edges()) {
    if (k < 4) throw ContractViolation("P_k-free extraction needs k >= 4");
    out.extraction.h = Graph::empty(g.vertex_count());
    out.extraction.certified = true;
    out.extraction.tier = CertificationTier::component_order;
    return out;
  }

  const Decomposition dec = degree_class_decompose(g, default_c1(), Rational(r));
  const Rational e_total(static_cast<unsigned long>(g.edge_count()));
  const Rational c2 = default_c2();
  Rational weight = c2;
  for (std::size_t j = 0; j < dec.classes.size(); ++j, weight *= c2) {
    const auto& cls = dec.classes[j];
    if (Rational(static_cast<unsigned long>(cls.edges.edge_count())) < weight * e_total) continue;
    std::vector<char> in_class(g.vertex_count(), 0);
    for (Vertex x : cls.vertices) in_class[x] = 1;
    VertexSet others;
    for (const Edge& e : cls.edges.edges()) {
      if (!in_class[e.u]) others.push_back(e.u);
      if (!in_class[e.v]) others.push_back(e.v);
    }
    out.selected = SelectedPart::degree_class;
    out.class_index = j + 1;
    out.selected_edges = cls.edges.edge_count();
    out.extraction = find_pk_free_subgraph(cls.edges, cls.vertices, make_vertex_set(std::move(others)), k, rng,
                                           options);
    break;
  }
  if (out.selected == SelectedPart::none) {
    if (3 * dec.residual_edges.edge_count() < g.edge_count()) {
      throw InternalInvariantViolation("degree-class decomposition has neither a heavy class nor a heavy remainder");
    }
    const Graph inside = induced_subgraph(dec.residual_edges, dec.residual_vertices);
    out.residual_edge_loss = dec.residual_edges.edge_count() - inside.edge_count();
    out.selected = SelectedPart::residual;
    out.selected_edges = inside.edge_count();
    out.extraction = find_pk_free_subgraph(inside, dec.residual_vertices, {}, k, rng, options);
  }
  out.achieved_ratio = static_cast<double>(out.extraction.h.edge_count()) / static_cast<double>(g.edge_count());
  return out;
}

}  // namespace pathfree
