#include "pfa/report.hpp"

#include <algorithm>

namespace pfa {

Json to_json(const IndependenceVerdict& v, const NodePair& pair) {
  Json j;
  j["pair"] = {pair.first, pair.second};
  j["chi2"] = v.chi2;
  j["dof"] = v.dof;
  j["p_value"] = v.p_value;
  j["independent"] = v.independent;
  j["guard_ok"] = v.guard_ok;
  return j;
}

Json to_json(const DependencyGraph& g) {
  Json j;
  j["nodes"] = g.graph.nodes();
  Json edges = Json::array();
  for (auto [a, b] : g.graph.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  Json tests = Json::array();
  for (const auto& t : g.tests) tests.push_back(to_json(t.verdict, t.pair));
  j["tests"] = std::move(tests);
  return j;
}

Json to_json(const DissectionResult& d) {
  Json j;
  Json removed = Json::array();
  for (const auto& r : d.removals) {
    removed.push_back({{"step", r.step},
                       {"nodes", r.nodes},
                       {"from_component", r.from_component}});
  }
  j["removed"] = std::move(removed);
  Json parts = Json::array();
  for (const auto& g : d.complete_subgraphs) parts.push_back(g.nodes());
  j["complete_subgraphs"] = std::move(parts);
  return j;
}

Json to_json(const PfaConfig& cfg) {
  Json j;
  j["nu"] = cfg.nu;
  j["alpha"] = cfg.alpha;
  j["ns"] = cfg.ns;
  j["batching"] = std::string(to_string(cfg.batching));
  j["seed"] = cfg.seed;
  j["tie_seed"] = cfg.tie_seed ? Json(*cfg.tie_seed) : Json(nullptr);
  j["min_expected"] = cfg.min_expected;
  j["dof_mode"] = std::string(to_string(cfg.dof_mode));
  j["theta"] = cfg.theta ? Json(*cfg.theta) : Json(nullptr);
  return j;
}

Json run_report(const PfaResult& result, const Dataset& ds,
                const std::map<std::string, double>& timings) {
  Json j;
  j["config"] = to_json(result.config);
  j["dataset"] = {{"n_points", ds.n_points()},
                  {"n_features", ds.n_features()},
                  {"n_outputs", ds.n_outputs()}};
  j["constants"] = result.constants;
  j["principal_subgraphs"] = result.principal_subgraphs;
  j["principal_features"] = result.principal_features;
  Json removed = Json::array();
  for (const auto& r : result.removed) {
    removed.push_back({{"pass", r.pass},
                       {"step", r.step},
                       {"nodes", r.nodes},
                       {"from_component", r.from_component}});
  }
  j["removed"] = std::move(removed);
  j["relevant_features"] =
      result.relevant_features ? Json(*result.relevant_features) : Json(nullptr);
  if (result.mi) {
    Json scores = Json::array();
    for (auto [id, score] : result.mi->scores) {
      scores.push_back({{"feature", id}, {"mi", score}});
    }
    j["mi"] = {{"theta", result.mi->theta},
               {"scores", std::move(scores)},
               {"selected", result.mi->selected}};
  } else {
    j["mi"] = nullptr;
  }
  j["selected_features"] = result.selected_features();
  j["passes"] = result.passes;
  j["tests_run"] = result.tests_run();
  j["graph"] = to_json(result.final_graph);
  j["warnings"] = result.warnings;
  if (!timings.empty()) {
    Json t;
    for (const auto& [phase, seconds] : timings) t[phase] = seconds;
    j["timings"] = std::move(t);
  }
  return j;
}

Json robust_report(const RobustResult& robust, const PfaConfig& cfg,
                   std::size_t runs, double fraction,
                   const std::vector<std::string>& run_report_files) {
  Json j;
  j["config"] = to_json(cfg);
  j["runs"] = runs;
  j["fraction"] = fraction;
  j["seeds"] = robust.seeds;
  Json per_run = Json::array();
  for (std::size_t k = 0; k < robust.runs.size(); ++k) {
    Json r;
    r["seed"] = robust.seeds[k];
    r["selected_features"] = robust.runs[k].selected_features();
    if (k < run_report_files.size()) r["report"] = run_report_files[k];
    per_run.push_back(std::move(r));
  }
  j["per_run"] = std::move(per_run);
  j["intersection"] = robust.intersection;
  j["selected_features"] = robust.intersection;
  return j;
}

std::string features_text(std::vector<VariableId> ids) {
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (auto id : ids) {
    out += std::to_string(id);
    out.push_back('\n');
  }
  return out;
}

}  // namespace pfa
