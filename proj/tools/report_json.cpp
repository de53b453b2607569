#include "report_json.hpp"

namespace pathfree::cli {

namespace {

template <class T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string selected_name(SelectedPart part) {
  switch (part) {
    case SelectedPart::none: return "none";
    case SelectedPart::degree_class: return "degree_class";
    case SelectedPart::residual: return "residual";
  }
  return "?";
}

}  // namespace

Json to_json(const bins::BinsStats& s) {
  Json j;
  j["q"] = s.query.q;
  j["n"] = s.query.n;
  j["expected_max"] = to_string(s.expected_max);
  j["w"] = to_string(s.w);
  j["x"] = s.x_solution;
  j["lb_unified"] = s.lower_bound_unified;
  j["lb_usable"] = optional_value(s.lower_bound_usable);
  j["branch"] = to_string(s.branch);
  return j;
}

Json to_json(const bins::CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["statement"] = c.statement;
  j["cells"] = c.cells;
  j["violations"] = c.violations;
  j["min_margin"] = optional_value(c.min_margin);
  j["first_violation"] = optional_value(c.first_violation);
  return j;
}

Json to_json(const bins::CheckSummary& s) {
  Json j;
  j["cells"] = s.cells();
  j["violations"] = s.violations();
  j["checks"] = Json::array();
  for (const auto& c : s.checks) j["checks"].push_back(to_json(c));
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["r"] = r.r;
  j["k"] = r.k;
  j["colours_used"] = r.colours_used;
  j["colour_budget_ok"] = r.colour_budget_ok;
  j["complete"] = r.complete;
  j["uncoloured_edges"] = r.uncoloured_edges;
  if (r.worst_component) {
    j["worst_component"] = {{"colour", r.worst_component->colour}, {"vertices", r.worst_component->path}};
  } else {
    j["worst_component"] = nullptr;
  }
  j["per_colour"] = Json::array();
  for (const auto& s : r.per_colour) {
    j["per_colour"].push_back({{"colour", s.colour},
                               {"components", s.component_count},
                               {"max_component_order", s.max_component_order},
                               {"path_bound", s.path_bound},
                               {"path_bound_exact", s.path_bound_exact}});
  }
  j["failures"] = Json::array();
  for (const auto& w : r.failures) j["failures"].push_back({{"colour", w.colour}, {"path", w.path}});
  Json certs = Json::object();
  for (const auto& [c, count] : r.certificates) certs[to_string(c)] = count;
  j["certificates"] = certs;
  j["undecided_components"] = r.undecided_components;
  return j;
}

Json to_json(const RoundTrace& t) {
  Json j;
  j["round"] = t.round_index;
  j["edges_before"] = t.edges_before;
  j["edges_after"] = t.edges_after;
  j["max_degree_before"] = t.max_degree_before;
  j["max_degree_after"] = t.max_degree_after;
  j["colour_allowance"] = t.colour_allowance;
  j["extraction_colours"] = t.extraction_colours;
  j["star_colours"] = t.star_colours;
  j["colours_spent"] = t.colours_spent;
  j["budget"] = to_string(t.budget);
  j["extractions"] = t.extractions;
  j["extraction_failed"] = t.extraction_failed;
  if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
  j["edge_conclusion"] = t.edge_conclusion;
  j["degree_conclusion"] = t.degree_conclusion;
  j["budget_conclusion"] = t.budget_conclusion;
  j["degree_precondition"] = t.degree_precondition;
  j["termination_reason"] = t.termination_reason ? Json(to_string(*t.termination_reason)) : Json(nullptr);
  return j;
}

Json to_json(const StageReport& s) {
  Json j;
  j["name"] = s.name;
  j["colour_base"] = s.colour_base;
  j["colours_used"] = s.colours_used;
  j["budget"] = s.budget ? Json(to_string(*s.budget)) : Json(nullptr);
  j["within_budget"] = s.within_budget;
  j["edges_before"] = s.edges_before;
  j["edges_after"] = s.edges_after;
  j["max_degree_before"] = s.max_degree_before;
  j["max_degree_after"] = s.max_degree_after;
  return j;
}

Json to_json(const PipelineRun& run) {
  const PipelineReport& r = run.report;
  Json j;
  j["success"] = r.success;
  j["complete"] = r.complete;
  j["r"] = r.r;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["edges"] = r.edges;
  j["colours_used"] = r.colours_used;
  j["beta0"] = r.beta0;
  j["beta0_overridden"] = r.beta0_overridden;
  j["matching_mode"] = r.matching_mode;
  j["preconditions"] = {{"edge_count", r.edge_precondition},
                        {"path_length", r.path_length_precondition},
                        {"initial_degree_bound", r.initial_degree_bound},
                        {"vizing_residual_bound", r.vizing_residual_bound}};
  j["termination"] = r.termination ? Json(to_string(*r.termination)) : Json(nullptr);
  j["endgame"] = r.endgame;
  j["stages"] = Json::array();
  for (const auto& s : r.stages) j["stages"].push_back(to_json(s));
  j["rounds"] = Json::array();
  for (const auto& t : run.traces) j["rounds"].push_back(to_json(t));
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

Json to_json(const KeyLemmaResult& k) {
  const ExtractionResult& e = k.extraction;
  Json j;
  j["selected"] = selected_name(k.selected);
  j["class_index"] = k.class_index;
  j["selected_edges"] = k.selected_edges;
  j["extracted_edges"] = e.h.edge_count();
  j["q"] = e.q;
  j["certified"] = e.certified;
  j["tier"] = to_string(e.tier);
  j["crossing"] = e.crossing;
  j["bipartition_below_half"] = e.bipartition_below_half;
  j["trials_run"] = e.trials_run;
  j["trial_index"] = e.trial_index;
  j["achieved_ratio"] = k.achieved_ratio;
  j["target_ratio"] = k.target_ratio;
  j["max_degree_precondition"] = k.max_degree_precondition;
  return j;
}

}  // namespace pathfree::cli
