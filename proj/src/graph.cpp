#include "pathfree/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "text_format.hpp"

namespace pathfree {

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw ContractViolation("self-loop at vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : adjacency_(vertex_count) {
  for (Edge& e : edges) {
    if (e.u == e.v) throw ContractViolation("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= vertex_count) {
      throw ContractViolation("edge endpoint " + std::to_string(e.v) + " outside vertex range " +
                              std::to_string(vertex_count));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    max_degree_ = std::max(max_degree_, nbrs.size());
  }
}

bool Graph::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::optional<std::size_t> Graph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Graph::non_isolated_vertex_count() const {
  return static_cast<std::size_t>(
      std::count_if(adjacency_.begin(), adjacency_.end(), [](const auto& n) { return !n.empty(); }));
}

namespace {

void require_same_range(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) {
    throw ContractViolation("graphs live on different vertex ranges (" + std::to_string(g.vertex_count()) +
                            " vs " + std::to_string(h.vertex_count()) + ")");
  }
}

std::vector<char> membership(std::size_t n, const VertexSet& set) {
  std::vector<char> mask(n, 0);
  for (Vertex v : set) {
    if (v >= n) throw ContractViolation("vertex " + std::to_string(v) + " outside vertex range");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

Graph subtract(const Graph& g, const Graph& h) {
  require_same_range(g, h);
  std::vector<Edge> out;
  out.reserve(g.edge_count() >= h.edge_count() ? g.edge_count() - h.edge_count() : 0);
  auto ge = g.edges();
  auto he = h.edges();
  std::size_t j = 0;
  for (const Edge& e : ge) {
    if (j < he.size() && he[j] < e) {
      throw ContractViolation("edge {" + std::to_string(he[j].u) + "," + std::to_string(he[j].v) +
                              "} is not in the minuend");
    }
    if (j < he.size() && he[j] == e) {
      ++j;
    } else {
      out.push_back(e);
    }
  }
  if (j < he.size()) {
    throw ContractViolation("edge {" + std::to_string(he[j].u) + "," + std::to_string(he[j].v) +
                            "} is not in the minuend");
  }
  return Graph(g.vertex_count(), std::move(out));
}

Graph unite(const Graph& g, const Graph& h) {
  require_same_range(g, h);
  std::vector<Edge> out(g.edges().begin(), g.edges().end());
  out.insert(out.end(), h.edges().begin(), h.edges().end());
  return Graph(g.vertex_count(), std::move(out));
}

Graph induced_bipartite(const Graph& g, const VertexSet& a, const VertexSet& b) {
  auto in_a = membership(g.vertex_count(), a);
  auto in_b = membership(g.vertex_count(), b);
  for (Vertex v : a) {
    if (in_b[v]) throw ContractViolation("sides overlap at vertex " + std::to_string(v));
  }
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if ((in_a[e.u] && in_b[e.v]) || (in_b[e.u] && in_a[e.v])) out.push_back(e);
  }
  return Graph(g.vertex_count(), std::move(out));
}

Graph induced_subgraph(const Graph& g, const VertexSet& vertices) {
  auto in = membership(g.vertex_count(), vertices);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) out.push_back(e);
  }
  return Graph(g.vertex_count(), std::move(out));
}

Graph incident_edges(const Graph& g, const VertexSet& vertices) {
  auto in = membership(g.vertex_count(), vertices);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (in[e.u] || in[e.v]) out.push_back(e);
  }
  return Graph(g.vertex_count(), std::move(out));
}

bool VertexPartition::is_valid() const {
  std::vector<Vertex> all;
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  return all == universe;
}

Bipartition random_balanced_bipartition(const Graph& g, const VertexSet& restricted_to, Rng& rng,
                                        int trial_budget) {
  if (!restricted_to.empty() && restricted_to.back() >= g.vertex_count()) {
    throw ContractViolation("restricted_to leaves the vertex range");
  }
  const std::size_t half = (restricted_to.size() + 1) / 2;
  const std::size_t target2 = g.edge_count();  // need 2 * crossing >= e(g)

  Bipartition best;
  best.below_half = true;
  std::vector<Vertex> order = restricted_to;
  std::vector<char> in_a(g.vertex_count(), 0);
  bool have_best = false;

  for (int trial = 1; trial <= std::max(trial_budget, 1); ++trial) {
    rng.shuffle(order);
    std::fill(in_a.begin(), in_a.end(), 0);
    for (std::size_t i = 0; i < half; ++i) in_a[order[i]] = 1;
    std::size_t crossing = 0;
    for (const Edge& e : g.edges()) crossing += (in_a[e.u] != in_a[e.v]) ? 1 : 0;

    if (!have_best || crossing > best.crossing) {
      have_best = true;
      best.a = make_vertex_set({order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half)});
      best.b = make_vertex_set({order.begin() + static_cast<std::ptrdiff_t>(half), order.end()});
      best.crossing = crossing;
    }
    best.trials = static_cast<std::size_t>(trial);
    if (2 * crossing >= target2) {
      best.below_half = false;
      break;
    }
  }
  return best;
}

namespace detail {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_uint(std::string_view token) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Records read_records(std::istream& in, std::size_t fields) {
  Records records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    const auto hash = view.find('#');
    if (hash != std::string_view::npos) {
      std::string_view comment = trim(view.substr(hash + 1));
      if (comment.starts_with("n=")) {
        auto count = parse_uint(trim(comment.substr(2)));
        if (!count) throw ParseError(line_no, "malformed vertex-count header");
        records.declared_vertex_count = *count;
      }
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;

    std::vector<std::uint64_t> row;
    std::size_t pos = 0;
    while (pos < view.size()) {
      const auto start = view.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto stop = view.find_first_of(" \t", start);
      if (stop == std::string_view::npos) stop = view.size();
      auto value = parse_uint(view.substr(start, stop - start));
      if (!value) {
        throw ParseError(line_no, "expected a nonnegative integer, got '" +
                                      std::string(view.substr(start, stop - start)) + "'");
      }
      row.push_back(*value);
      pos = stop;
    }
    if (row.size() != fields) {
      throw ParseError(line_no, "expected " + std::to_string(fields) + " fields, got " + std::to_string(row.size()));
    }
    records.rows.push_back(std::move(row));
    records.line_numbers.push_back(line_no);
  }
  return records;
}

}  // namespace detail

Graph parse_edge_list(std::istream& in) {
  auto records = detail::read_records(in, 2);
  std::uint64_t n = records.declared_vertex_count.value_or(0);
  std::vector<Edge> edges;
  edges.reserve(records.rows.size());
  for (std::size_t i = 0; i < records.rows.size(); ++i) {
    const auto& row = records.rows[i];
    const std::size_t line_no = records.line_numbers[i];
    if (row[0] == row[1]) throw ParseError(line_no, "self-loop at vertex " + std::to_string(row[0]));
    if (row[0] > UINT32_MAX - 1 || row[1] > UINT32_MAX - 1) throw ParseError(line_no, "vertex id too large");
    const std::uint64_t hi = std::max(row[0], row[1]);
    if (records.declared_vertex_count) {
      if (hi >= *records.declared_vertex_count) {
        throw ParseError(line_no, "vertex " + std::to_string(hi) + " exceeds declared count " +
                                      std::to_string(*records.declared_vertex_count));
      }
    } else {
      n = std::max(n, hi + 1);
    }
    edges.push_back(make_edge(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1])));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
  out << "# n=" << g.vertex_count() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace pathfree
