#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfa/binning.hpp"
#include "pfa/dataset.hpp"
#include "pfa/depgraph.hpp"
#include "pfa/dissect.hpp"
#include "pfa/stats.hpp"

namespace pfa {

enum class Batching {
  ordered,  // ascending ids packed into consecutive sublists
  random,   // ids shuffled with the run seed before packing
};

std::string_view to_string(Batching b);
Batching parse_batching(std::string_view text);

struct PfaConfig {
  /// Minimum bin occupancy. Dataset dependent; there is no default.
  std::size_t nu = 0;
  double alpha = 0.01;
  /// Maximal number of nodes per sublist.
  std::size_t ns = 50;
  Batching batching = Batching::ordered;
  std::uint64_t seed = 0;
  double min_expected = 5.0;
  DofMode dof_mode = DofMode::independence;
  std::optional<double> theta;
  std::optional<std::uint64_t> tie_seed;
  unsigned threads = 1;

  /// Throws ArgumentError on an invalid combination.
  void validate() const;
  TestOptions test_options() const;
};

struct PfaRemoval {
  std::size_t pass = 0;  // 1-based batching pass
  std::size_t step = 0;  // 1-based, cumulative over the run
  std::vector<VariableId> nodes;
  std::vector<VariableId> from_component;
};

struct MiSelection {
  double theta = 0.0;
  /// Largest mutual information (nats) with any output, per relevant feature.
  std::vector<std::pair<VariableId, double>> scores;
  std::vector<VariableId> selected;
};

struct PfaResult {
  PfaConfig config;
  std::vector<std::vector<VariableId>> principal_subgraphs;
  std::vector<VariableId> principal_features;
  std::vector<PfaRemoval> removed;
  /// Whole principal subgraphs related to some output; set by filter_relevant.
  std::optional<std::vector<VariableId>> relevant_features;
  std::optional<MiSelection> mi;
  std::vector<VariableId> constants;
  std::vector<std::string> warnings;

  std::size_t passes = 0;
  /// Dependency graph of the last (full) dissection pass.
  DependencyGraph final_graph;

  /// Shared with explain_feature() and filter_relevant() so pairs tested
  /// during the run are not tested again.
  std::shared_ptr<const std::vector<DiscretizedFeature>> variables;
  std::shared_ptr<VerdictCache> cache;
  std::shared_ptr<VariableTester> tester;

  /// The features a caller should model with: the MI selection if present,
  /// else the relevant set if present, else the principal features.
  std::vector<VariableId> selected_features() const;
  /// Number of pairwise tests actually run (cache misses).
  std::size_t tests_run() const;
};

/// Batched dissection: sublists of at most `ns` nodes are dissected until a
/// full pass removes nothing, then the graph of all remaining nodes is
/// dissected once more.
PfaResult run_pfa(const Dataset& ds, const PfaConfig& cfg);

/// Marks every principal subgraph with at least one member that is not
/// independent of at least one output as relevant (the whole subgraph).
void filter_relevant(PfaResult& result, const Dataset& ds);

/// Relevant features whose mutual information with the outputs exceeds
/// theta. Multiple outputs use the largest score.
MiSelection filter_by_mi(const PfaResult& result, const Dataset& ds,
                         double theta);

/// Principal features that are not independent of `target`. Missing verdicts
/// are computed on demand and added to the result's cache.
std::vector<VariableId> explain_feature(const PfaResult& result,
                                        VariableId target);

struct RobustResult {
  std::vector<VariableId> intersection;
  std::vector<std::uint64_t> seeds;
  std::vector<PfaResult> runs;
};

/// Runs the pipeline on `runs` subsamples (run k uses seed cfg.seed + k for
/// both subsampling and batching) and intersects the selected features.
RobustResult robust_intersection(const Dataset& ds, const PfaConfig& cfg,
                                 std::size_t runs, double fraction);

/// Full pipeline as used by the CLI: run_pfa, then filter_relevant when
/// the dataset has outputs, then filter_by_mi when theta is set.
PfaResult analyze(const Dataset& ds, const PfaConfig& cfg);

}  // namespace pfa
