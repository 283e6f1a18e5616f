#include "pfa/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <sstream>

#include "pfa/errors.hpp"
#include "pfa/parallel.hpp"

namespace pfa {

std::string_view to_string(Batching b) {
  return b == Batching::random ? "random" : "ordered";
}

Batching parse_batching(std::string_view text) {
  if (text == "ordered") return Batching::ordered;
  if (text == "random") return Batching::random;
  throw ArgumentError("unknown batching mode '" + std::string(text) + "'");
}

void PfaConfig::validate() const {
  if (nu < 1) throw ArgumentError("nu must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (ns < 2) throw ArgumentError("ns must be at least 2");
  if (!(min_expected >= 0.0)) throw ArgumentError("min_expected must be non-negative");
  if (theta && !(*theta >= 0.0)) throw ArgumentError("theta must be non-negative");
}

TestOptions PfaConfig::test_options() const {
  return {alpha, min_expected, dof_mode};
}

std::vector<VariableId> PfaResult::selected_features() const {
  if (mi) return mi->selected;
  if (relevant_features) return *relevant_features;
  return principal_features;
}

std::size_t PfaResult::tests_run() const { return tester ? tester->calls() : 0; }

namespace {

std::vector<std::vector<VariableId>> partition(std::vector<VariableId> nodes,
                                               std::size_t ns, Batching mode,
                                               std::mt19937_64& rng) {
  if (mode == Batching::random) std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<std::vector<VariableId>> out;
  for (std::size_t i = 0; i < nodes.size(); i += ns) {
    const auto end = std::min(nodes.size(), i + ns);
    out.emplace_back(nodes.begin() + static_cast<std::ptrdiff_t>(i),
                     nodes.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

struct BatchOutcome {
  DependencyGraph graph;
  DissectionResult dissection;
};

std::vector<std::string> guard_warnings(const VerdictCache& cache,
                                        double min_expected) {
  std::size_t tested = 0;
  std::size_t violations = 0;
  double smallest = 0.0;
  for (const auto& [pair, v] : cache.entries()) {
    if (v.dof == 0) continue;  // constant involved, no table
    ++tested;
    if (!v.guard_ok) {
      smallest = violations == 0 ? v.min_expected_count
                                 : std::min(smallest, v.min_expected_count);
      ++violations;
    }
  }
  if (violations == 0) return {};
  std::ostringstream msg;
  msg << "expected frequency below " << min_expected << " in " << violations
      << " of " << tested << " chi-square tests (smallest " << smallest
      << "); consider increasing nu";
  return {msg.str()};
}

void record(PfaResult& result, std::size_t pass, const DissectionResult& d) {
  for (const auto& r : d.removals) {
    result.removed.push_back(
        {pass, result.removed.size() + 1, r.nodes, r.from_component});
  }
}

}  // namespace

PfaResult run_pfa(const Dataset& ds, const PfaConfig& cfg) {
  cfg.validate();
  PfaResult result;
  result.config = cfg;
  auto variables = std::make_shared<std::vector<DiscretizedFeature>>(
      discretize_all(ds, cfg.nu, cfg.threads));
  result.variables = variables;
  result.cache = std::make_shared<VerdictCache>();
  result.tester = std::make_shared<VariableTester>(
      *variables, std::make_shared<ChiSquarePairTest>(cfg.test_options()));

  std::vector<VariableId> nodes;
  for (auto id : ds.feature_ids()) {
    if ((*variables)[id - 1].is_constant) {
      result.constants.push_back(id);
    } else {
      nodes.push_back(id);
    }
  }

  const TieBreak tie{cfg.tie_seed};
  std::mt19937_64 rng(cfg.seed);
  const VariableTester& tester = *result.tester;
  VerdictCache& cache = *result.cache;

  std::optional<BatchOutcome> final_outcome;
  while (!nodes.empty()) {
    ++result.passes;
    const auto batches = partition(nodes, cfg.ns, cfg.batching, rng);
    std::vector<BatchOutcome> outcomes(batches.size());
    const bool single = batches.size() == 1;
    parallel_for(batches.size(), single ? 1u : cfg.threads, [&](std::size_t b) {
      auto graph = build_graph(tester, batches[b], cache, single ? cfg.threads : 1u);
      auto dissection = dissect(graph.graph, tie);
      outcomes[b] = {std::move(graph), std::move(dissection)};
    });

    std::vector<VariableId> survivors;
    bool removed_any = false;
    for (const auto& o : outcomes) {
      record(result, result.passes, o.dissection);
      removed_any = removed_any || !o.dissection.removals.empty();
      auto kept = o.dissection.surviving_nodes();
      survivors.insert(survivors.end(), kept.begin(), kept.end());
    }
    std::sort(survivors.begin(), survivors.end());

    if (!removed_any) {
      if (single) {
        // The only sublist already was the graph of all remaining nodes.
        final_outcome = std::move(outcomes.front());
      } else {
        ++result.passes;
        auto graph = build_graph(tester, nodes, cache, cfg.threads);
        auto dissection = dissect(graph.graph, tie);
        record(result, result.passes, dissection);
        final_outcome = BatchOutcome{std::move(graph), std::move(dissection)};
      }
      break;
    }
    nodes = std::move(survivors);
  }

  if (final_outcome) {
    for (const auto& g : final_outcome->dissection.complete_subgraphs) {
      result.principal_subgraphs.push_back(g.nodes());
    }
    result.principal_features = final_outcome->dissection.surviving_nodes();
    result.final_graph = std::move(final_outcome->graph);
  }
  result.warnings = guard_warnings(cache, cfg.min_expected);
  return result;
}

namespace {

void require_state(const PfaResult& result, const Dataset& ds) {
  if (!result.variables || !result.cache || !result.tester) {
    throw ArgumentError("result does not come from run_pfa");
  }
  if (result.variables->size() != ds.n_variables() ||
      (!result.variables->empty() &&
       result.variables->front().n_points() != ds.n_points())) {
    throw ArgumentError("dataset does not match the analyzed dataset");
  }
}

}  // namespace

void filter_relevant(PfaResult& result, const Dataset& ds) {
  require_state(result, ds);
  if (ds.n_outputs() == 0) {
    throw ArgumentError("relevance filtering needs at least one output row");
  }
  const auto outputs = ds.output_ids();
  std::vector<VariableId> relevant;
  for (const auto& subgraph : result.principal_subgraphs) {
    const bool related = std::any_of(subgraph.begin(), subgraph.end(), [&](VariableId x) {
      return std::any_of(outputs.begin(), outputs.end(), [&](VariableId y) {
        return !cached_verdict(x, y, *result.tester, *result.cache).independent;
      });
    });
    if (related) relevant.insert(relevant.end(), subgraph.begin(), subgraph.end());
  }
  std::sort(relevant.begin(), relevant.end());
  result.relevant_features = std::move(relevant);
  result.warnings = guard_warnings(*result.cache, result.config.min_expected);
}

MiSelection filter_by_mi(const PfaResult& result, const Dataset& ds,
                         double theta) {
  require_state(result, ds);
  if (!result.relevant_features) {
    throw ArgumentError("mutual-information filtering needs relevant features");
  }
  if (std::isnan(theta) || theta < 0.0) throw ArgumentError("theta must be non-negative");
  MiSelection out;
  out.theta = theta;
  const auto& vars = *result.variables;
  for (auto x : *result.relevant_features) {
    double score = 0.0;
    for (auto y : ds.output_ids()) {
      score = std::max(score, mutual_information(vars[x - 1], vars[y - 1]));
    }
    out.scores.emplace_back(x, score);
    if (score > theta) out.selected.push_back(x);
  }
  return out;
}

std::vector<VariableId> explain_feature(const PfaResult& result,
                                        VariableId target) {
  if (!result.tester || !result.cache) {
    throw ArgumentError("result does not come from run_pfa");
  }
  if (target == 0 || target > result.tester->variable_count()) {
    throw ArgumentError("target id " + std::to_string(target) + " out of range");
  }
  std::vector<VariableId> out;
  for (auto x : result.principal_features) {
    if (x == target) continue;
    if (!cached_verdict(x, target, *result.tester, *result.cache).independent) {
      out.push_back(x);
    }
  }
  return out;
}

PfaResult analyze(const Dataset& ds, const PfaConfig& cfg) {
  auto result = run_pfa(ds, cfg);
  if (ds.n_outputs() > 0) {
    filter_relevant(result, ds);
    if (cfg.theta) result.mi = filter_by_mi(result, ds, *cfg.theta);
  }
  return result;
}

RobustResult robust_intersection(const Dataset& ds, const PfaConfig& cfg,
                                 std::size_t runs, double fraction) {
  if (runs < 1) throw ArgumentError("runs must be at least 1");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ArgumentError("fraction must lie in (0, 1]");
  }
  cfg.validate();
  RobustResult out;
  for (std::size_t k = 0; k < runs; ++k) {
    PfaConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + k;
    try {
      auto sample = subsample(ds, fraction, run_cfg.seed);
      auto result = analyze(sample, run_cfg);
      auto selected = result.selected_features();
      if (k == 0) {
        out.intersection = selected;
      } else {
        std::vector<VariableId> both;
        std::set_intersection(out.intersection.begin(), out.intersection.end(),
                              selected.begin(), selected.end(),
                              std::back_inserter(both));
        out.intersection = std::move(both);
      }
      out.seeds.push_back(run_cfg.seed);
      out.runs.push_back(std::move(result));
    } catch (const Error& e) {
      throw Error("run " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace pfa
