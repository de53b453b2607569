#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pathfree/balls_bins.hpp"
#include "pathfree/extractor.hpp"
#include "pathfree/generators.hpp"
#include "pathfree/inequalities.hpp"
#include "pathfree/pipeline.hpp"
#include "pathfree/verifier.hpp"
#include "report_json.hpp"

namespace pathfree::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(text, &used);
      if (used != text.size()) throw UsageError("");
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    Range r{std::stoull(a, &used), 0};
    if (used != a.size()) throw UsageError("");
    r.hi = std::stoull(b, &used);
    if (used != b.size()) throw UsageError("");
    if (r.lo > r.hi) throw UsageError("");
    return r;
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "', expected lo..hi");
  }
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_edge_list(in);
}

/// Writes to `path`, or to `fallback` for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct ColourArgs {
  std::string input;
  std::string output = "-";
  std::string report;
  long r = 0;
  long k = 0;
  std::uint64_t seed = 0;
  std::size_t trials = kDefaultExtractionTrials;
  unsigned threads = 1;
  double beta0 = 0.0;
  std::size_t exact_cap = kExactPathCap;
  std::size_t search_budget = VerifyOptions{}.search_budget;
  bool enforce = false;
  std::size_t inject_overspend = 0;
};

struct VerifyArgs {
  std::string input;
  std::string colouring;
  long r = 0;
  long k = 0;
  std::size_t exact_cap = kExactPathCap;
  std::size_t search_budget = VerifyOptions{}.search_budget;
  std::string format = "json";
};

struct ExtractArgs {
  std::string input;
  std::string output = "-";
  long r = 0;
  long k = 0;
  double beta = 0.5;
  std::uint64_t seed = 0;
  std::size_t trials = kDefaultExtractionTrials;
  unsigned threads = 1;
};

struct BinsArgs {
  std::vector<std::string> grid{"1..4", "1..4"};
  std::uint64_t exact_cap = bins::kDefaultExactCap;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
};

struct CheckArgs {
  std::vector<std::string> grid{"1..24", "1..24"};
  std::uint64_t seed = 0;
  std::size_t samples = 500;
  std::string format = "text";
  bool corrupt = false;
};

struct GenerateArgs {
  GeneratorSpec spec;
  std::string output = "-";
};

int cmd_colour(const ColourArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g = read_graph(a.input);
  PipelineParams params;
  params.r = a.r;
  params.k = a.k;
  params.seed = a.seed;
  params.trials_per_extraction = a.trials;
  params.threads = a.threads;
  params.enforce_preconditions = a.enforce;
  params.extra_round_colours = a.inject_overspend;
  if (a.beta0 > 0.0) params.set_beta0(a.beta0);

  const PipelineRun run = colour_graph(g, params);
  const VerificationReport check = verify(g, run.colouring, a.r, a.k, {a.exact_cap, a.search_budget});

  Json report = to_json(run);
  report["verification"] = to_json(check);
  const bool ok = run.report.success && check.verdict == Verdict::pass && check.complete;
  report["accepted"] = ok;

  if (run.report.complete) {
    Sink sink(a.output, out);
    serialize_colouring(*sink, g, run.colouring, a.r, a.k);
  }
  if (!a.report.empty()) {
    Sink sink(a.report, out);
    *sink << report.dump(2) << '\n';
  } else if (a.output != "-") {
    out << report.dump(2) << '\n';
  }
  if (!ok) {
    err << "colour: " << (run.report.message.empty() ? "verifier verdict " + to_string(check.verdict)
                                                      : run.report.message)
        << '\n';
  }
  return ok ? kOk : kFailure;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.colouring);
  if (!in) throw UsageError("cannot open " + a.colouring);
  const ParsedColouring parsed = parse_colouring(in);
  const long r = a.r > 0 ? a.r : parsed.r.value_or(0);
  const long k = a.k > 0 ? a.k : parsed.k.value_or(0);
  if (r < 1 || k < 1) throw UsageError("--r and --k are required when the colouring header lacks them");
  Graph g = parsed.graph;
  if (!a.input.empty()) {
    g = read_graph(a.input);
    for (const auto& [e, c] : parsed.colouring.assignments()) {
      if (!g.contains(e)) throw UsageError("coloured edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                                           " is not in the graph");
    }
  }
  const VerificationReport report = verify(g, parsed.colouring, r, k, {a.exact_cap, a.search_budget});
  if (a.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "verdict " << to_string(report.verdict) << "\ncolours_used " << report.colours_used << " (r = " << r
        << ")\ncomplete " << (report.complete ? "yes" : "no") << '\n';
    for (const auto& w : report.failures) {
      out << "witness colour " << w.colour << ':';
      for (Vertex v : w.path) out << ' ' << v;
      out << '\n';
    }
  }
  if (!report.complete) err << "verify: " << report.uncoloured_edges << " edges are uncoloured\n";
  return report.verdict == Verdict::pass && report.complete ? kOk : kFailure;
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream&) {
  const Graph g = read_graph(a.input);
  const KeyLemmaResult result = key_lemma_extract(g, a.beta, a.r, a.k, Rng(a.seed), {a.trials, a.threads});
  Sink sink(a.output, out);
  write_edge_list(*sink, result.extraction.h, {"extracted " + to_json(result).dump()});
  return result.extraction.certified ? kOk : kFailure;
}

int cmd_bins(const BinsArgs& a, std::ostream& out, std::ostream&) {
  const Range qs = parse_range(a.grid.at(0));
  const Range ns = parse_range(a.grid.at(1));
  if (qs.lo < 1 || ns.lo < 1) throw UsageError("q and n start at 1");
  Json rows = Json::array();
  for (std::uint64_t q = qs.lo; q <= qs.hi; ++q) {
    for (std::uint64_t n = ns.lo; n <= ns.hi; ++n) {
      Json row;
      try {
        row = to_json(bins::stats({q, n}, a.exact_cap));
      } catch (const bins::CapExceeded& e) {
        row["q"] = q;
        row["n"] = n;
        row["expected_max"] = nullptr;
        row["w"] = nullptr;
        const bins::UnifiedBound u = bins::lower_bound_unified({q, n});
        row["x"] = u.x;
        row["lb_unified"] = u.value;
        row["lb_usable"] = q > 1 ? Json(bins::lower_bound_usable(static_cast<double>(q), static_cast<double>(n)))
                                 : Json(nullptr);
        row["refusal"] = e.what();
      }
      if (a.trials > 0) {
        const bins::Estimate est = bins::monte_carlo_max_load({q, n}, a.trials, Rng(derive_seed(a.seed, q * 1000003 + n)));
        row["mc_mean"] = est.mean;
        row["mc_stderr"] = est.stderr_;
      }
      rows.push_back(row);
    }
  }
  if (a.format == "json") {
    out << rows.dump(2) << '\n';
  } else {
    out << "q\tn\texpected_max\tw\tx\tlb_unified\tlb_usable";
    if (a.trials > 0) out << "\tmc_mean\tmc_stderr";
    out << '\n';
    for (const auto& row : rows) {
      auto cell = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.is_null() ? "-" : v.dump(); };
      out << row["q"] << '\t' << row["n"] << '\t' << cell(row["expected_max"]) << '\t' << cell(row["w"]) << '\t'
          << cell(row["x"]) << '\t' << cell(row["lb_unified"]) << '\t' << cell(row["lb_usable"]);
      if (a.trials > 0) out << '\t' << cell(row["mc_mean"]) << '\t' << cell(row["mc_stderr"]);
      out << '\n';
    }
  }
  return kOk;
}

int cmd_check_inequalities(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const Range qs = parse_range(a.grid.at(0));
  const Range ns = parse_range(a.grid.at(1));
  bins::CheckOptions options;
  options.grid = {qs.lo, qs.hi, ns.lo, ns.hi};
  options.seed = a.seed;
  options.schur_samples = a.samples;
  if (a.corrupt) {
    // Negative control: halves every expectation.
    options.oracle = [](const bins::BinsQuery& q) { return bins::exact_max_load_expectation(q) / 2; };
  }
  const bins::CheckSummary summary = bins::check_all(options);
  if (a.format == "json") {
    out << to_json(summary).dump(2) << '\n';
  } else {
    for (const auto& c : summary.checks) {
      out << c.name << ": cells " << c.cells << ", violations " << c.violations << ", min margin ";
      if (c.min_margin) {
        out << *c.min_margin;
      } else {
        out << '-';
      }
      if (c.first_violation) out << ", first violation at " << *c.first_violation;
      out << '\n';
    }
    out << "total: cells " << summary.cells() << ", violations " << summary.violations() << '\n';
  }
  if (summary.violations() > 0) err << "check-inequalities: " << summary.violations() << " violations\n";
  return summary.violations() == 0 ? kOk : kFailure;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Graph g;
  try {
    g = generate(a.spec);
  } catch (const InfeasibleParameters& e) {
    throw UsageError(e.what());
  }
  Sink sink(a.output, out);
  write_edge_list(*sink, g, {describe(a.spec)});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge colourings without long monochromatic paths, and balls-and-bins analytics"};
  app.name(args.empty() ? "pathfree" : args[0]);
  app.require_subcommand(1);

  ColourArgs colour;
  auto* c = app.add_subcommand("colour", "colour a graph with at most r colours and no monochromatic P_k");
  c->add_option("--input", colour.input, "edge-list file")->required();
  c->add_option("--output", colour.output, "colouring file ('-' for stdout)");
  c->add_option("--report", colour.report, "JSON run report (default: stdout when --output is a file)");
  c->add_option("--r", colour.r, "colour budget")->required()->check(CLI::PositiveNumber);
  c->add_option("--k", colour.k, "forbidden path length in vertices")->required()->check(CLI::Range(3L, 1L << 30));
  c->add_option("--seed", colour.seed);
  c->add_option("--trials", colour.trials, "random trials per extraction")->check(CLI::PositiveNumber);
  c->add_option("--threads", colour.threads)->check(CLI::PositiveNumber);
  c->add_option("--beta0", colour.beta0, "override beta0 (e.g. 0.5)")->check(CLI::Range(0.0, 1.0));
  c->add_option("--exact-cap", colour.exact_cap, "vertex cap of the exact path oracle");
  c->add_option("--search-budget", colour.search_budget, "node budget of the exhaustive path search");
  c->add_flag("--enforce-preconditions", colour.enforce, "reject k < 100 ln r");
  c->add_option("--inject-round-overspend", colour.inject_overspend)->group("");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "check a colouring for monochromatic P_k");
  v->add_option("--colouring", ver.colouring, "colouring file")->required();
  v->add_option("--input", ver.input, "edge-list file the colouring must cover");
  v->add_option("--r", ver.r)->check(CLI::PositiveNumber);
  v->add_option("--k", ver.k)->check(CLI::PositiveNumber);
  v->add_option("--exact-cap", ver.exact_cap);
  v->add_option("--search-budget", ver.search_budget);
  v->add_option("--format", ver.format)->check(CLI::IsMember({"json", "text"}));

  ExtractArgs ext;
  auto* x = app.add_subcommand("extract", "extract one large P_k-free subgraph");
  x->add_option("--input", ext.input)->required();
  x->add_option("--output", ext.output, "edge list of the extracted subgraph");
  x->add_option("--r", ext.r)->required()->check(CLI::Range(2L, 1L << 30));
  x->add_option("--k", ext.k)->required()->check(CLI::Range(4L, 1L << 30));
  x->add_option("--beta0", ext.beta, "beta in the degree bound D <= beta r ln r");
  x->add_option("--seed", ext.seed);
  x->add_option("--trials", ext.trials)->check(CLI::PositiveNumber);
  x->add_option("--threads", ext.threads)->check(CLI::PositiveNumber);

  BinsArgs bin;
  auto* b = app.add_subcommand("bins", "exact and Monte Carlo maximum-load table");
  b->add_option("--grid", bin.grid, "q_min..q_max n_min..n_max")->expected(2);
  b->add_option("--exact-cap", bin.exact_cap, "refuse exact evaluation above q * n");
  b->add_option("--trials", bin.trials, "Monte Carlo trials per cell (0 = skip)");
  b->add_option("--seed", bin.seed);
  b->add_option("--format", bin.format)->check(CLI::IsMember({"json", "text"}));

  CheckArgs chk;
  auto* k = app.add_subcommand("check-inequalities", "verify the balls-and-bins inequalities on a grid");
  k->add_option("--grid", chk.grid, "q_min..q_max n_min..n_max")->expected(2);
  k->add_option("--seed", chk.seed);
  k->add_option("--samples", chk.samples, "sampled T-transform instances");
  k->add_option("--format", chk.format)->check(CLI::IsMember({"json", "text"}));
  k->add_flag("--corrupt-oracle", chk.corrupt, "negative control: feed a wrong expectation oracle");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a seeded random graph");
  g->add_option("--model", gen.spec.model)
      ->required()
      ->check(CLI::IsMember({"uniform-m", "d-regular", "star-forest", "path-union"}));
  g->add_option("--n", gen.spec.n)->required();
  g->add_option("--m", gen.spec.m, "edges (uniform-m)");
  g->add_option("--d", gen.spec.d, "degree, leaves per star, or number of paths");
  g->add_option("--seed", gen.spec.seed);
  g->add_option("--output", gen.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c->parsed()) return cmd_colour(colour, out, err);
    if (v->parsed()) return cmd_verify(ver, out, err);
    if (x->parsed()) return cmd_extract(ext, out, err);
    if (b->parsed()) return cmd_bins(bin, out, err);
    if (k->parsed()) return cmd_check_inequalities(chk, out, err);
    if (g->parsed()) return cmd_generate(gen, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalInvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace pathfree::cli
