#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pfa/binning.hpp"
#include "pfa/dataset.hpp"
#include "pfa/stats.hpp"

namespace pfa {

/// Undirected simple graph over variable ids. Nodes are kept sorted and
/// neighbor lists are sorted, so iteration order never depends on insertion
/// order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<VariableId> nodes);

  void add_edge(VariableId a, VariableId b);

  bool contains(VariableId v) const;
  bool has_edge(VariableId a, VariableId b) const;
  std::span<const VariableId> neighbors(VariableId v) const;
  std::size_t degree(VariableId v) const { return neighbors(v).size(); }

  const std::vector<VariableId>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Edges as (smaller id, larger id), sorted.
  std::vector<std::pair<VariableId, VariableId>> edges() const;

  /// Induced subgraph on `members` (which must be nodes of this graph).
  Graph induced(std::span<const VariableId> members) const;
  /// Induced subgraph on all nodes except `removed`.
  Graph without(std::span<const VariableId> removed) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<VariableId> nodes_;
  std::map<VariableId, std::vector<VariableId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// True iff every pair of distinct nodes is adjacent. Graphs with fewer than
/// two nodes are complete.
bool is_complete(const Graph& g);

/// Maximal connected induced subgraphs, ordered by smallest member id.
std::vector<Graph> connected_components(const Graph& g);

bool is_connected(const Graph& g);

using NodePair = std::pair<VariableId, VariableId>;

inline NodePair ordered_pair(VariableId a, VariableId b) {
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

/// Memo of pairwise verdicts keyed by unordered pair. Safe for concurrent
/// insertion and lookup.
class VerdictCache {
 public:
  std::optional<IndependenceVerdict> find(VariableId a, VariableId b) const;
  /// Keeps the existing entry when the pair is already present.
  void insert(VariableId a, VariableId b, const IndependenceVerdict& verdict);
  std::size_t size() const;
  std::map<NodePair, IndependenceVerdict> entries() const;

 private:
  mutable std::mutex mutex_;
  std::map<NodePair, IndependenceVerdict> entries_;
};

/// Runs a pairwise test on variables addressed by id. Counts invocations.
class VariableTester {
 public:
  VariableTester(std::span<const DiscretizedFeature> variables,
                 std::shared_ptr<const PairTest> test);

  IndependenceVerdict operator()(VariableId a, VariableId b) const;

  const DiscretizedFeature& variable(VariableId id) const;
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  std::span<const DiscretizedFeature> variables_;
  std::shared_ptr<const PairTest> test_;
  mutable std::atomic<std::size_t> calls_{0};
};

struct TestRecord {
  NodePair pair;
  IndependenceVerdict verdict;
};

/// Graph whose edges mark pairs that failed the independence test, together
/// with the verdicts that decided each pair.
struct DependencyGraph {
  Graph graph;
  std::vector<TestRecord> tests;  // sorted by pair
};

/// Looks up the verdict for a pair in `cache`, running `tester` on a miss.
IndependenceVerdict cached_verdict(VariableId a, VariableId b,
                                   const VariableTester& tester,
                                   VerdictCache& cache);

/// Builds the dependency graph on `nodes`: an edge joins two nodes iff their
/// verdict is "not independent". Only pairs missing from `cache` are tested;
/// missing pairs are tested on up to `threads` threads.
DependencyGraph build_graph(const VariableTester& tester,
                            std::span<const VariableId> nodes,
                            VerdictCache& cache, unsigned threads = 1);

}  // namespace pfa
