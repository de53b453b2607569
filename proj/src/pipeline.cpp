#include "pathfree/pipeline.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "text_format.hpp"

namespace pathfree {

namespace {

constexpr std::uint64_t kRoundStream = 0x100;

bool closing_inequalities_hold(double y) {
  // y = ln(1 / beta0); both sides compared in log form.
  const double lhs = y / 30.0;
  return lhs > std::log(2.0 * std::exp(1.0) * 360.0 * 60.0) && std::exp(lhs) > std::log(5.0) + 2.0 * y;
}

double log_r(long r) { return std::log(static_cast<double>(r)); }

/// beta r ln r scaled by zeta^i, in doubles.
double degree_target(const PipelineParams& p, std::size_t i) {
  return std::pow(to_double(p.zeta), static_cast<double>(i)) * p.beta0 * static_cast<double>(p.r) * log_r(p.r);
}

/// e <= r^(7/4) k, decided exactly as e^4 <= r^7 k^4.
bool below_edge_floor(std::size_t e, long r, long k) {
  Integer lhs = Integer(static_cast<unsigned long>(e));
  lhs = lhs * lhs * lhs * lhs;
  Integer rr = Integer(r);
  Integer kk = Integer(k);
  Integer rhs = rr * rr * rr * rr * rr * rr * rr * kk * kk * kk * kk;
  return lhs <= rhs;
}

/// ceil(56 r^(3/4)): the least s with s^4 >= 56^4 r^3.
long endgame_star_colours(long r) {
  const Integer target = Integer(56 * 56) * Integer(56 * 56) * Integer(r) * Integer(r) * Integer(r);
  auto fits = [&](long s) {
    Integer v = Integer(s);
    return v * v * v * v >= target;
  };
  long s = static_cast<long>(std::ceil(56.0 * std::pow(static_cast<double>(r), 0.75)));
  while (s > 0 && fits(s - 1)) --s;
  while (!fits(s)) ++s;
  return s;
}

long floor_long(const Rational& q) { return floor(q).get_si(); }

void append(EdgeColouring& into, const EdgeColouring& part, Colour base, StageReport& stage) {
  const EdgeColouring shifted = part.compacted(base);
  stage.colour_base = base;
  stage.colours_used = shifted.colours_used();
  into.merge(shifted);
}

StageReport open_stage(std::string name, const Graph& g) {
  StageReport s;
  s.name = std::move(name);
  s.edges_before = g.edge_count();
  s.max_degree_before = g.max_degree();
  return s;
}

void close_stage(StageReport& s, const Graph& residual) {
  s.edges_after = residual.edge_count();
  s.max_degree_after = residual.max_degree();
  if (s.budget) s.within_budget = Rational(static_cast<unsigned long>(s.colours_used)) <= *s.budget;
}

}  // namespace

double default_beta0() {
  static const double value = [] {
    double lo = 0.0;
    double hi = 1.0;
    while (!closing_inequalities_hold(hi)) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (closing_inequalities_hold(mid) ? hi : lo) = mid;
    }
    return std::exp(-hi);
  }();
  return value;
}

void PipelineParams::set_beta0(double value) {
  beta0 = value;
  c0 = exact(value) / 576;
  beta0_overridden = true;
}

void PipelineParams::validate() const {
  if (r < 1) throw ContractViolation("r must be at least 1");
  if (k < 3) throw ContractViolation("k must be at least 3");
  if (!(beta0 > 0.0 && beta0 < 1.0)) throw ContractViolation("beta0 must lie in (0, 1)");
  if (rho <= 0 || rho >= make_rational(1, 2)) throw ContractViolation("rho must lie in (0, 1/2)");
  if (zeta <= 0 || !(std::pow(to_double(zeta), 0.9) < to_double(rho))) {
    throw ContractViolation("zeta^0.9 < rho fails");
  }
  if (eta <= 0 || eta >= rho * zeta) throw ContractViolation("eta < rho zeta fails");
  if (c0 <= 0 || c0 > exact(beta0) / 576) throw ContractViolation("c0 must lie in (0, beta0 / 576]");
  if (trials_per_extraction < 1) throw ContractViolation("at least one extraction trial is needed");
  if (enforce_preconditions && static_cast<double>(k) < 100.0 * log_r(r)) {
    throw ContractViolation("k >= 100 ln r fails");
  }
}

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::edge_floor: return "edge_floor";
    case TerminationReason::degree_floor: return "degree_floor";
    case TerminationReason::budget: return "budget";
    case TerminationReason::stalled: return "stalled";
  }
  return "?";
}

RoundOutcome run_round(const Graph& g_i, std::size_t i, const PipelineParams& params, Colour colour_base,
                       const Rng& rng) {
  RoundOutcome out;
  RoundTrace& t = out.trace;
  t.round_index = i;
  t.edges_before = g_i.edge_count();
  t.max_degree_before = g_i.max_degree();
  const Rational share = Rational(params.r) * pow(params.rho, static_cast<unsigned>(i));
  t.budget = share / 6;
  t.colour_allowance = static_cast<std::size_t>(floor_long(share / 12)) + params.extra_round_colours;
  t.degree_precondition = static_cast<double>(t.max_degree_before) <= degree_target(params, i);

  const double beta = std::pow(to_double(params.zeta), static_cast<double>(i)) * params.beta0;
  const Rational target = params.eta * Rational(static_cast<unsigned long>(t.edges_before));
  const FindOptions options{params.trials_per_extraction, params.threads};

  Graph f = g_i;
  EdgeColouring extracted;
  for (std::size_t j = 0; j < t.colour_allowance; ++j) {
    if (Rational(static_cast<unsigned long>(f.edge_count())) <= target) break;
    const KeyLemmaResult kl = key_lemma_extract(f, beta, params.r, params.k, rng.derive(j), options);
    if (!kl.extraction.certified || !kl.extraction.h.has_edges()) {
      t.extraction_failed = true;
      t.diagnostic = kl.extraction.certified ? "extraction returned no edges"
                                             : "no certified extraction within the trial budget";
      break;
    }
    t.extractions.push_back(kl.achieved_ratio);
    for (const Edge& e : kl.extraction.h.edges()) extracted.assign(e, colour_base + static_cast<Colour>(j));
    f = subtract(f, kl.extraction.h);
  }
  t.extraction_colours = t.extractions.size();
  t.edge_conclusion = Rational(static_cast<unsigned long>(f.edge_count())) <= target;

  const Colour star_base = colour_base + static_cast<Colour>(t.extraction_colours);
  const StarRefinement star = star_colouring(f, static_cast<long>(t.colour_allowance), params.k, star_base);
  const EdgeColouring star_colours = star.colouring.compacted(star_base);
  t.star_colours = star_colours.colours_used();
  extracted.merge(star_colours);

  t.colours_spent = t.extraction_colours + t.star_colours;
  t.budget_conclusion = Rational(static_cast<unsigned long>(t.colours_spent)) <= t.budget;
  if (!t.budget_conclusion) {
    throw InternalInvariantViolation("round " + std::to_string(i) + " spent " + std::to_string(t.colours_spent) +
                                     " colours, more than r rho^i / 6 = " + to_string(t.budget));
  }

  out.g_next = star.residual;
  out.colouring = std::move(extracted);
  t.edges_after = out.g_next.edge_count();
  t.max_degree_after = out.g_next.max_degree();
  t.degree_conclusion = static_cast<double>(t.max_degree_after) <= degree_target(params, i + 1);
  return out;
}

PipelineRun colour_graph(const Graph& g, const PipelineParams& params) {
  params.validate();
  PipelineRun run;
  PipelineReport& rep = run.report;
  rep.r = params.r;
  rep.k = params.k;
  rep.seed = params.seed;
  rep.beta0 = params.beta0;
  rep.beta0_overridden = params.beta0_overridden;
  rep.edges = g.edge_count();
  const double r = static_cast<double>(params.r);
  const Rational r_exact(params.r);
  rep.path_length_precondition = static_cast<double>(params.k) >= 100.0 * log_r(params.r);
  rep.edge_precondition =
      Rational(static_cast<unsigned long>(g.edge_count())) <= params.c0 * r_exact * r_exact * Rational(params.k) *
                                                                   exact(log_r(params.r));

  Colour base = 0;
  auto finish = [&]() {
    rep.colours_used = run.colouring.colours_used();
    rep.complete = run.colouring.covers_exactly(g);
    rep.success = rep.complete && rep.colours_used <= static_cast<std::size_t>(params.r);
    if (!rep.complete) {
      rep.message = "colouring is incomplete";
    } else if (!rep.success) {
      rep.message = "needed " + std::to_string(rep.colours_used) + " colours, more than r = " +
                    std::to_string(params.r);
    }
    return std::move(run);
  };

  if (params.k == 3) {
    // Every stage below relies on stars, which already contain P_3.
    rep.matching_mode = true;
    StageReport s = open_stage("proper", g);
    append(run.colouring, proper_edge_colouring(g), base, s);
    close_stage(s, Graph::empty(g.vertex_count()));
    rep.stages.push_back(s);
    rep.endgame = "proper";
    return finish();
  }

  // Vizing-type refinement.
  StageReport viz_stage = open_stage("vizing", g);
  viz_stage.budget = r_exact / 3;
  const VizingRefinement viz = vizing_type_refinement(g, params.r, params.k, base);
  append(run.colouring, viz.colouring, base, viz_stage);
  close_stage(viz_stage, viz.residual);
  rep.vizing_residual_bound = viz.residual_vertex_bound;
  base += static_cast<Colour>(viz_stage.colours_used);
  rep.stages.push_back(viz_stage);

  // Initial star step down to Delta <= beta0 r ln r.
  StageReport star_stage = open_stage("initial_star", viz.residual);
  star_stage.budget = r_exact / 6;
  const StarRefinement first = star_colouring(viz.residual, params.r / 6, params.k, base);
  append(run.colouring, first.colouring, base, star_stage);
  close_stage(star_stage, first.residual);
  rep.initial_degree_bound = static_cast<double>(first.residual.max_degree()) <= params.beta0 * r * log_r(params.r);
  base += static_cast<Colour>(star_stage.colours_used);
  rep.stages.push_back(star_stage);

  // Rounds.
  const Rng master(params.seed);
  Graph current = first.residual;
  for (std::size_t i = 0;; ++i) {
    std::optional<TerminationReason> stop;
    if (!current.has_edges() || below_edge_floor(current.edge_count(), params.r, params.k)) {
      stop = TerminationReason::edge_floor;
    } else if (degree_target(params, i) < r / 7.0) {
      stop = TerminationReason::degree_floor;
    } else if (floor_long(r_exact * pow(params.rho, static_cast<unsigned>(i)) / 12) == 0) {
      stop = TerminationReason::budget;
    }
    if (stop) {
      rep.termination = stop;
      if (!run.traces.empty()) run.traces.back().termination_reason = stop;
      break;
    }
    StageReport round_stage = open_stage("round_" + std::to_string(i), current);
    RoundOutcome outcome = run_round(current, i, params, base, master.derive(kRoundStream + i));
    round_stage.budget = outcome.trace.budget;
    append(run.colouring, outcome.colouring, base, round_stage);
    close_stage(round_stage, outcome.g_next);
    base += static_cast<Colour>(round_stage.colours_used);
    rep.stages.push_back(round_stage);
    const bool progressed = outcome.g_next.edge_count() < current.edge_count();
    run.traces.push_back(std::move(outcome.trace));
    current = std::move(outcome.g_next);
    if (!progressed) {
      rep.termination = TerminationReason::stalled;
      run.traces.back().termination_reason = rep.termination;
      break;
    }
  }

  // Endgame.
  StageReport end_stage = open_stage("endgame", current);
  end_stage.budget = r_exact / 6;
  EdgeColouring endgame;
  Graph rest = current;
  if (7 * current.max_degree() <= static_cast<std::size_t>(params.r)) {
    rep.endgame = "proper";
  } else {
    rep.endgame = "star+proper";
    const StarRefinement last = star_colouring(current, endgame_star_colours(params.r), params.k, 0);
    endgame = last.colouring.compacted(0);
    rest = last.residual;
  }
  const Colour proper_base = static_cast<Colour>(endgame.colours_used());
  endgame.merge(proper_edge_colouring(rest).compacted(proper_base));
  append(run.colouring, endgame, base, end_stage);
  close_stage(end_stage, Graph::empty(g.vertex_count()));
  rep.stages.push_back(end_stage);
  return finish();
}

void serialize_colouring(std::ostream& out, const Graph& g, const EdgeColouring& colouring, long r, long k) {
  if (!colouring.covers_exactly(g)) throw ContractViolation("colouring does not cover exactly the graph's edges");
  out << "# n=" << g.vertex_count() << '\n';
  out << "# r=" << r << " k=" << k << " colours_used=" << colouring.colours_used() << '\n';
  for (const auto& [e, c] : colouring.assignments()) out << e.u << ' ' << e.v << ' ' << c << '\n';
}

namespace {

std::optional<long> header_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash == std::string::npos) continue;
    std::istringstream words(line.substr(hash + 1));
    std::string word;
    while (words >> word) {
      if (word.rfind(key + "=", 0) != 0) continue;
      try {
        return std::stol(word.substr(key.size() + 1));
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ParsedColouring parse_colouring(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::istringstream rows(text);
  const detail::Records records = detail::read_records(rows, 3);

  ParsedColouring out;
  out.r = header_value(text, "r");
  out.k = header_value(text, "k");
  std::uint64_t n = records.declared_vertex_count.value_or(0);
  std::vector<Edge> edges;
  std::vector<std::pair<Edge, Colour>> colours;
  for (std::size_t i = 0; i < records.rows.size(); ++i) {
    const auto& row = records.rows[i];
    const std::size_t line = records.line_numbers[i];
    if (row[0] == row[1]) throw ParseError(line, "self-loop at vertex " + std::to_string(row[0]));
    if (row[2] > std::numeric_limits<Colour>::max()) throw ParseError(line, "colour index too large");
    const std::uint64_t hi = std::max(row[0], row[1]);
    if (hi >= std::numeric_limits<Vertex>::max()) throw ParseError(line, "vertex id too large");
    if (records.declared_vertex_count) {
      if (hi >= n) throw ParseError(line, "vertex " + std::to_string(hi) + " exceeds declared count");
    } else {
      n = std::max<std::uint64_t>(n, hi + 1);
    }
    const Edge e = make_edge(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]));
    edges.push_back(e);
    colours.emplace_back(e, static_cast<Colour>(row[2]));
  }
  for (std::size_t i = 0; i < colours.size(); ++i) {
    if (out.colouring.covers(colours[i].first)) {
      throw ParseError(records.line_numbers[i], "edge listed twice");
    }
    out.colouring.assign(colours[i].first, colours[i].second);
  }
  out.graph = Graph(static_cast<std::size_t>(n), std::move(edges));
  return out;
}

}  // namespace pathfree
