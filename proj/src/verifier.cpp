#include "pathfree/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <queue>

namespace pathfree {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::order: return "order";
    case Certificate::matching_bound: return "matching_bound";
    case Certificate::tree_diameter: return "tree_diameter";
    case Certificate::exact_dp: return "exact_dp";
    case Certificate::exhaustive_search: return "exhaustive_search";
    case Certificate::witness: return "witness";
    case Certificate::none: return "none";
  }
  return "?";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::uint32_t> adjacency_masks(const Graph& c) {
  std::vector<std::uint32_t> adj(c.vertex_count(), 0);
  for (const Edge& e : c.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  return adj;
}

void check_cap(const Graph& c, std::size_t cap) {
  if (cap > 30) cap = 30;
  if (c.vertex_count() > cap) {
    throw OracleRefusal("component has " + std::to_string(c.vertex_count()) +
                        " vertices, above the exact-oracle cap of " + std::to_string(cap));
  }
}

// Upper bound on the vertices of any path: 2 * (vertex cover size) + 1,
// since vertices outside a cover are pairwise non-adjacent. Bipartite
// components get a minimum cover (maximum matching, König); others a greedy
// cover.
std::size_t matching_path_bound(const Graph& c) {
  const std::size_t n = c.vertex_count();
  std::vector<int> side(n, -1);
  bool bipartite = true;
  for (Vertex s = 0; s < n && bipartite; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty() && bipartite) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : c.neighbours(x)) {
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          q.push(y);
        } else if (side[y] == side[x]) {
          bipartite = false;
          break;
        }
      }
    }
  }

  std::size_t cover = 0;
  if (bipartite) {
    std::vector<long> match(n, -1);
    std::vector<char> seen(n, 0);
    auto augment = [&](auto&& self, Vertex x) -> bool {
      for (Vertex y : c.neighbours(x)) {
        if (seen[y]) continue;
        seen[y] = 1;
        if (match[y] < 0 || self(self, static_cast<Vertex>(match[y]))) {
          match[y] = x;
          return true;
        }
      }
      return false;
    };
    for (Vertex x = 0; x < n; ++x) {
      if (side[x] != 0) continue;
      std::fill(seen.begin(), seen.end(), 0);
      if (augment(augment, x)) ++cover;
    }
  } else {
    std::vector<std::size_t> degree(n);
    for (Vertex v = 0; v < n; ++v) degree[v] = c.degree(v);
    std::vector<char> removed(n, 0);
    std::size_t remaining = c.edge_count();
    while (remaining > 0) {
      Vertex best = 0;
      for (Vertex v = 1; v < n; ++v) {
        if (degree[v] > degree[best]) best = v;
      }
      removed[best] = 1;
      ++cover;
      remaining -= degree[best];
      for (Vertex y : c.neighbours(best)) {
        if (!removed[y]) --degree[y];
      }
      degree[best] = 0;
    }
  }
  return 2 * cover + 1;
}

std::vector<std::size_t> bfs_distances(const Graph& c, Vertex s) {
  std::vector<std::size_t> dist(c.vertex_count(), SIZE_MAX);
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : c.neighbours(x)) {
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

// Longest path in a tree, as (vertex count, path).
std::pair<std::size_t, std::vector<Vertex>> tree_longest_path(const Graph& c) {
  auto far = [&](const std::vector<std::size_t>& d) {
    return static_cast<Vertex>(std::max_element(d.begin(), d.end()) - d.begin());
  };
  const Vertex a = far(bfs_distances(c, 0));
  const auto from_a = bfs_distances(c, a);
  Vertex b = far(from_a);
  std::vector<Vertex> path{b};
  while (b != a) {
    for (Vertex y : c.neighbours(b)) {
      if (from_a[y] + 1 == from_a[b]) {
        b = y;
        break;
      }
    }
    path.push_back(b);
  }
  return {path.size(), path};
}

enum class SearchOutcome { found, absent, budget };

// Exhaustive depth-first search for a simple path on `length` vertices.
SearchOutcome search_path(const Graph& c, std::size_t length, std::size_t budget, std::vector<Vertex>& path) {
  std::vector<char> on_path(c.vertex_count(), 0);
  std::size_t expansions = 0;
  bool exhausted = false;
  auto dfs = [&](auto&& self, Vertex x) -> bool {
    if (path.size() == length) return true;
    if (++expansions > budget) {
      exhausted = true;
      return false;
    }
    for (Vertex y : c.neighbours(x)) {
      if (on_path[y]) continue;
      on_path[y] = 1;
      path.push_back(y);
      if (self(self, y)) return true;
      if (exhausted) return false;
      path.pop_back();
      on_path[y] = 0;
    }
    return false;
  };
  for (Vertex s = 0; s < c.vertex_count(); ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    if (dfs(dfs, s)) return SearchOutcome::found;
    if (exhausted) return SearchOutcome::budget;
    on_path[s] = 0;
  }
  path.clear();
  return SearchOutcome::absent;
}

}  // namespace

std::map<Colour, std::vector<Component>> monochromatic_components(const Graph& g, const EdgeColouring& colouring) {
  std::map<Colour, std::vector<Edge>> classes;
  for (const auto& [e, c] : colouring.assignments()) {
    if (!g.contains(e)) {
      throw ContractViolation("coloured edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              "} is not in the graph");
    }
    classes[c].push_back(e);
  }

  std::map<Colour, std::vector<Component>> out;
  DisjointSets sets(g.vertex_count());
  std::vector<long> local_id(g.vertex_count(), -1);
  for (const auto& [colour, edges] : classes) {
    std::vector<Vertex> touched;
    for (const Edge& e : edges) {
      sets.join(e.u, e.v);
      touched.push_back(e.u);
      touched.push_back(e.v);
    }
    touched = make_vertex_set(std::move(touched));

    std::map<std::size_t, std::size_t> root_to_component;
    auto& components = out[colour];
    for (Vertex v : touched) {
      const std::size_t root = sets.find(v);
      auto [it, inserted] = root_to_component.emplace(root, components.size());
      if (inserted) components.push_back(Component{colour, {}, {}});
      auto& comp = components[it->second];
      local_id[v] = static_cast<long>(comp.vertices.size());
      comp.vertices.push_back(v);
    }
    std::vector<std::vector<Edge>> local_edges(components.size());
    for (const Edge& e : edges) {
      const std::size_t ci = root_to_component.at(sets.find(e.u));
      local_edges[ci].push_back(
          make_edge(static_cast<Vertex>(local_id[e.u]), static_cast<Vertex>(local_id[e.v])));
    }
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
      components[ci].local = Graph(components[ci].vertices.size(), std::move(local_edges[ci]));
    }
    // Reset scratch state for the next colour.
    for (Vertex v : touched) {
      local_id[v] = -1;
    }
    sets = DisjointSets(g.vertex_count());
  }
  return out;
}

std::size_t longest_path_exact(const Graph& component, std::size_t cap) {
  check_cap(component, cap);
  const std::size_t n = component.vertex_count();
  if (n == 0) return 0;
  const auto adj = adjacency_masks(component);
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) ends[std::size_t{1} << v] = 1U << v;
  std::size_t best = 1;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::uint32_t e = ends[mask];
    if (e == 0) continue;
    best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
    while (e) {
      const int v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[v] & ~mask;
      while (ext) {
        const int w = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (1U << w)] |= 1U << w;
      }
    }
  }
  return best;
}

std::optional<std::vector<Vertex>> find_path_exact(const Graph& component, std::size_t length, std::size_t cap) {
  check_cap(component, cap);
  const std::size_t n = component.vertex_count();
  if (length == 0) return std::vector<Vertex>{};
  if (length > n) return std::nullopt;
  const auto adj = adjacency_masks(component);
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) ends[std::size_t{1} << v] = 1U << v;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::uint32_t e = ends[mask];
    if (e == 0) continue;
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size == length) {
      // Walk back through the DP table.
      std::vector<Vertex> path;
      std::uint32_t m = mask;
      int v = std::countr_zero(e);
      path.push_back(static_cast<Vertex>(v));
      while (std::popcount(m) > 1) {
        const std::uint32_t prev = m & ~(1U << v);
        const std::uint32_t candidates = ends[prev] & adj[v];
        v = std::countr_zero(candidates);
        path.push_back(static_cast<Vertex>(v));
        m = prev;
      }
      return path;
    }
    while (e) {
      const int v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[v] & ~mask;
      while (ext) {
        const int w = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (1U << w)] |= 1U << w;
      }
    }
  }
  return std::nullopt;
}

VerificationReport verify(const Graph& g, const EdgeColouring& colouring, long r, long k,
                          const VerifyOptions& options) {
  VerificationReport report;
  report.r = r;
  report.k = k;
  report.colours_used = colouring.colours_used();
  report.colour_budget_ok = static_cast<long>(report.colours_used) <= r;
  report.uncoloured_edges = g.edge_count() - colouring.size();
  report.complete = colouring.covers_exactly(g);

  const auto components = monochromatic_components(g, colouring);
  const auto kk = static_cast<std::size_t>(std::max<long>(k, 0));
  std::size_t worst_order = 0;

  for (const auto& [colour, comps] : components) {
    ColourStats stats;
    stats.colour = colour;
    stats.component_count = comps.size();
    for (const Component& comp : comps) {
      const std::size_t order = comp.vertices.size();
      stats.max_component_order = std::max(stats.max_component_order, order);
      if (order > worst_order) {
        worst_order = order;
        report.worst_component = Witness{colour, comp.vertices};
      }

      auto record = [&](Certificate cert, std::size_t bound, bool exact) {
        ++report.certificates[cert];
        if (bound > stats.path_bound || (bound == stats.path_bound && !exact)) {
          stats.path_bound = bound;
          stats.path_bound_exact = exact;
        }
      };
      auto fail_with = [&](const std::vector<Vertex>& local_path) {
        Witness w{colour, {}};
        for (Vertex v : local_path) w.path.push_back(comp.vertices[v]);
        ++report.certificates[Certificate::witness];
        stats.path_bound = std::max(stats.path_bound, local_path.size());
        report.failures.push_back(std::move(w));
      };

      if (order < kk) {
        record(Certificate::order, order, false);
        continue;
      }
      const std::size_t matching_bound = matching_path_bound(comp.local);
      if (matching_bound < kk) {
        record(Certificate::matching_bound, matching_bound, false);
        continue;
      }
      if (comp.local.edge_count() + 1 == order) {
        auto [longest, path] = tree_longest_path(comp.local);
        if (longest < kk) {
          record(Certificate::tree_diameter, longest, true);
        } else {
          path.resize(kk);
          fail_with(path);
        }
        continue;
      }
      if (order <= std::min<std::size_t>(options.exact_cap, 30)) {
        if (auto path = find_path_exact(comp.local, kk, options.exact_cap)) {
          fail_with(*path);
        } else {
          record(Certificate::exact_dp, longest_path_exact(comp.local, options.exact_cap), true);
        }
        continue;
      }
      std::vector<Vertex> path;
      switch (search_path(comp.local, kk, options.search_budget, path)) {
        case SearchOutcome::found: fail_with(path); break;
        case SearchOutcome::absent: record(Certificate::exhaustive_search, kk - 1, false); break;
        case SearchOutcome::budget:
          ++report.certificates[Certificate::none];
          ++report.undecided_components;
          stats.path_bound = std::max(stats.path_bound, order);
          stats.path_bound_exact = false;
          break;
      }
    }
    report.per_colour.push_back(stats);
  }

  if (!report.failures.empty() || !report.colour_budget_ok) {
    report.verdict = Verdict::fail;
  } else if (report.undecided_components > 0) {
    report.verdict = Verdict::indeterminate;
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

}  // namespace pathfree
