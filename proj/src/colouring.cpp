#include "pathfree/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathfree {

void EdgeColouring::assign(const Edge& e, Colour c) {
  auto [it, inserted] = assignments_.emplace(e, c);
  if (!inserted) {
    throw ContractViolation("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} coloured twice");
  }
}

std::optional<Colour> EdgeColouring::colour_of(const Edge& e) const {
  auto it = assignments_.find(e);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

std::set<Colour> EdgeColouring::palette() const {
  std::set<Colour> out;
  for (const auto& [e, c] : assignments_) out.insert(c);
  return out;
}

std::size_t EdgeColouring::colours_used() const { return palette().size(); }

std::optional<Colour> EdgeColouring::max_colour() const {
  std::optional<Colour> best;
  for (const auto& [e, c] : assignments_) {
    if (!best || c > *best) best = c;
  }
  return best;
}

void EdgeColouring::merge(const EdgeColouring& other) {
  for (const auto& [e, c] : other.assignments_) assign(e, c);
}

EdgeColouring EdgeColouring::compacted(Colour base) const {
  std::map<Colour, Colour> renumber;
  for (Colour c : palette()) renumber.emplace(c, base + static_cast<Colour>(renumber.size()));
  EdgeColouring out;
  for (const auto& [e, c] : assignments_) out.assignments_.emplace(e, renumber.at(c));
  return out;
}

bool EdgeColouring::covers_exactly(const Graph& g) const {
  if (assignments_.size() != g.edge_count()) return false;
  auto it = assignments_.begin();
  for (const Edge& e : g.edges()) {
    if (it->first != e) return false;
    ++it;
  }
  return true;
}

namespace {

constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

/// Per-vertex colour table for Misra-Gries: slot (v, c) holds the neighbour
/// reached from v along the edge coloured c.
class FanColourer {
 public:
  explicit FanColourer(const Graph& g)
      : g_(g), palette_(g.max_degree() + 1), at_(g.vertex_count() * palette_, kNone),
        colour_(g.edge_count(), kUncoloured) {}

  EdgeColouring run() {
    for (const Edge& e : g_.edges()) colour_edge(e.u, e.v);
    EdgeColouring out;
    for (std::size_t i = 0; i < g_.edge_count(); ++i) {
      if (colour_[i] == kUncoloured) throw InternalInvariantViolation("Misra-Gries left an edge uncoloured");
      out.assign(g_.edges()[i], colour_[i]);
    }
    return out;
  }

 private:
  static constexpr Colour kUncoloured = std::numeric_limits<Colour>::max();

  bool is_free(Vertex v, Colour c) const { return at_[v * palette_ + c] == kNone; }

  Colour free_colour(Vertex v) const {
    for (Colour c = 0; c < palette_; ++c) {
      if (is_free(v, c)) return c;
    }
    throw InternalInvariantViolation("no free colour at a vertex; palette too small");
  }

  std::size_t index(Vertex a, Vertex b) const { return *g_.edge_index(make_edge(a, b)); }

  Colour colour_of(Vertex a, Vertex b) const { return colour_[index(a, b)]; }

  void set(Vertex a, Vertex b, Colour c) {
    colour_[index(a, b)] = c;
    at_[a * palette_ + c] = b;
    at_[b * palette_ + c] = a;
  }

  void clear(Vertex a, Vertex b) {
    Colour c = colour_[index(a, b)];
    if (c == kUncoloured) return;
    at_[a * palette_ + c] = kNone;
    at_[b * palette_ + c] = kNone;
    colour_[index(a, b)] = kUncoloured;
  }

  void colour_edge(Vertex u, Vertex v) {
    // Maximal fan at u starting with the uncoloured edge uv.
    std::vector<Vertex> fan{v};
    std::vector<char> in_fan(g_.vertex_count(), 0);
    in_fan[v] = 1;
    for (bool grown = true; grown;) {
      grown = false;
      const Vertex last = fan.back();
      for (Vertex w : g_.neighbours(u)) {
        if (in_fan[w]) continue;
        const Colour c = colour_of(u, w);
        if (c != kUncoloured && is_free(last, c)) {
          fan.push_back(w);
          in_fan[w] = 1;
          grown = true;
          break;
        }
      }
    }

    const Colour c = free_colour(u);
    const Colour d = free_colour(fan.back());

    // Invert the cd-path starting at u; it begins with the d-edge at u.
    if (c != d) {
      std::vector<std::pair<Vertex, Vertex>> path;
      Vertex x = u;
      Colour want = d;
      while (at_[x * palette_ + want] != kNone) {
        const Vertex y = at_[x * palette_ + want];
        path.emplace_back(x, y);
        x = y;
        want = (want == d) ? c : d;
      }
      std::vector<Colour> old;
      for (auto [a, b] : path) old.push_back(colour_of(a, b));
      for (auto [a, b] : path) clear(a, b);
      for (std::size_t i = 0; i < path.size(); ++i) set(path[i].first, path[i].second, old[i] == c ? d : c);
    }

    // First fan vertex with d free such that the prefix is still a fan.
    std::size_t w = fan.size();
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        const Colour ci = colour_of(u, fan[i]);
        if (ci == kUncoloured || !is_free(fan[i - 1], ci)) break;
      }
      if (is_free(fan[i], d)) {
        w = i;
        break;
      }
    }
    if (w == fan.size()) throw InternalInvariantViolation("Misra-Gries: no rotatable fan prefix");

    std::vector<Colour> shifted(w);
    for (std::size_t i = 0; i < w; ++i) shifted[i] = colour_of(u, fan[i + 1]);
    for (std::size_t i = 1; i <= w; ++i) clear(u, fan[i]);
    for (std::size_t i = 0; i < w; ++i) set(u, fan[i], shifted[i]);
    set(u, fan[w], d);
  }

  const Graph& g_;
  std::size_t palette_;
  std::vector<Vertex> at_;
  std::vector<Colour> colour_;
};

}  // namespace

EdgeColouring proper_edge_colouring(const Graph& g) {
  if (!g.has_edges()) return {};
  return FanColourer(g).run();
}

VizingRefinement vizing_type_refinement(const Graph& g, long r, long k, Colour colour_base) {
  if (r < 1) throw ContractViolation("vizing_type_refinement: r must be positive");
  if (k < 4) throw ContractViolation("vizing_type_refinement: k must be at least 4");

  VizingRefinement out;
  std::vector<char> low(g.vertex_count(), 0);
  VertexSet high;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (7 * static_cast<long>(g.degree(v)) <= r) {
      low[v] = 1;
      out.low_degree.push_back(v);
    } else {
      high.push_back(v);
    }
  }

  const Graph inner = induced_subgraph(g, out.low_degree);
  EdgeColouring inner_colouring = proper_edge_colouring(inner).compacted(colour_base);
  out.inner_colours = inner_colouring.colours_used();
  out.colouring = std::move(inner_colouring);

  // Edges between low and high vertices: distinct colours around each
  // low-degree vertex, so every class is a union of stars centred on the
  // high side.
  const Colour star_base = colour_base + static_cast<Colour>(out.inner_colours);
  for (Vertex v : out.low_degree) {
    Colour next = 0;
    for (Vertex w : g.neighbours(v)) {
      if (low[w]) continue;
      out.colouring.assign(make_edge(v, w), star_base + next);
      ++next;
    }
    out.bipartite_colours = std::max<std::size_t>(out.bipartite_colours, next);
  }

  out.residual = induced_subgraph(g, high);
  out.colours_used = out.inner_colours + out.bipartite_colours;
  out.colour_slots = out.colours_used;
  out.within_budget = 3 * static_cast<long>(out.colours_used) <= r;

  const double rd = static_cast<double>(r);
  const double kd = static_cast<double>(k);
  const double log_r = std::log(rd);
  out.edge_precondition = 56.0 * static_cast<double>(g.edge_count()) <= rd * rd * log_r * kd;
  if (out.edge_precondition) {
    out.residual_vertex_bound =
        static_cast<double>(out.residual.non_isolated_vertex_count()) <= rd * log_r * kd / 4.0;
  }
  return out;
}

StarRefinement star_colouring(const Graph& g, long s, long k, Colour colour_base) {
  if (s < 0) throw ContractViolation("star_colouring: s must be nonnegative");
  if (k < 4) throw ContractViolation("star_colouring: k must be at least 4");

  StarRefinement out;
  out.colour_slots = static_cast<std::size_t>(s);
  const long e = static_cast<long>(g.edge_count());
  if (s == 0 || e == 0) {
    out.residual = g;
    out.threshold = 0;
    out.degree_bound_met = (e == 0);
    return out;
  }
  out.threshold = Rational(8 * e) / Rational(k * s);
  out.threshold.canonicalize();

  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const long d = static_cast<long>(g.degree(v));
    if (d >= 1 && Rational(d) >= out.threshold) out.high_degree.push_back(v);
  }

  const std::size_t capacity = static_cast<std::size_t>(k / 3);
  const std::size_t groups = static_cast<std::size_t>(s);
  std::vector<long> group_of(g.vertex_count(), -1);
  for (Vertex v : out.high_degree) {
    const std::size_t placed = out.centre_groups.empty() ? 0
                                                         : (out.centre_groups.size() - 1) * capacity +
                                                               out.centre_groups.back().size();
    if (placed >= groups * capacity) {
      out.overflow.push_back(v);
      continue;
    }
    if (out.centre_groups.empty() || out.centre_groups.back().size() == capacity) out.centre_groups.emplace_back();
    out.centre_groups.back().push_back(v);
    group_of[v] = static_cast<long>(out.centre_groups.size() - 1);
  }

  std::vector<Edge> rest;
  for (const Edge& e2 : g.edges()) {
    const long gu = group_of[e2.u];
    const long gv = group_of[e2.v];
    if (gu < 0 && gv < 0) {
      rest.push_back(e2);
      continue;
    }
    long chosen = gu;
    if (chosen < 0 || (gv >= 0 && gv < chosen)) chosen = gv;
    out.colouring.assign(e2, colour_base + static_cast<Colour>(chosen));
  }
  out.residual = Graph(g.vertex_count(), std::move(rest));
  out.colours_used = out.colouring.colours_used();
  out.within_budget = out.centre_groups.size() <= groups;
  out.degree_bound_met = Rational(static_cast<long>(out.residual.max_degree())) <= out.threshold;
  return out;
}

}  // namespace pathfree
