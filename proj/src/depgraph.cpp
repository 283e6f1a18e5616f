#include "pfa/depgraph.hpp"

#include <algorithm>
#include <string>

#include "pfa/errors.hpp"
#include "pfa/parallel.hpp"

namespace pfa {

Graph::Graph(std::vector<VariableId> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw ArgumentError("duplicate node in graph");
  }
  for (auto v : nodes_) adjacency_.emplace(v, std::vector<VariableId>{});
}

void Graph::add_edge(VariableId a, VariableId b) {
  if (a == b) throw ArgumentError("self-loops are not allowed");
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia == adjacency_.end() || ib == adjacency_.end()) {
    throw ArgumentError("edge references a node outside the graph");
  }
  auto& na = ia->second;
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos != na.end() && *pos == b) return;
  na.insert(pos, b);
  auto& nb = ib->second;
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
}

bool Graph::contains(VariableId v) const { return adjacency_.count(v) != 0; }

bool Graph::has_edge(VariableId a, VariableId b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), b);
}

std::span<const VariableId> Graph::neighbors(VariableId v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) {
    throw ArgumentError("node " + std::to_string(v) + " not in graph");
  }
  return it->second;
}

std::vector<std::pair<VariableId, VariableId>> Graph::edges() const {
  std::vector<std::pair<VariableId, VariableId>> out;
  out.reserve(edge_count_);
  for (const auto& [v, nbrs] : adjacency_) {
    for (auto w : nbrs) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const VariableId> members) const {
  Graph g(std::vector<VariableId>(members.begin(), members.end()));
  for (auto v : g.nodes_) {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) {
      throw ArgumentError("node " + std::to_string(v) + " not in graph");
    }
    auto& out = g.adjacency_[v];
    for (auto w : it->second) {
      if (g.adjacency_.count(w)) out.push_back(w);
    }
    g.edge_count_ += out.size();
  }
  g.edge_count_ /= 2;
  return g;
}

Graph Graph::without(std::span<const VariableId> removed) const {
  std::vector<VariableId> sorted_removed(removed.begin(), removed.end());
  std::sort(sorted_removed.begin(), sorted_removed.end());
  std::vector<VariableId> keep;
  keep.reserve(nodes_.size());
  std::set_difference(nodes_.begin(), nodes_.end(), sorted_removed.begin(),
                      sorted_removed.end(), std::back_inserter(keep));
  return induced(keep);
}

bool is_complete(const Graph& g) {
  const std::size_t n = g.size();
  return n < 2 || g.edge_count() == n * (n - 1) / 2;
}

std::vector<Graph> connected_components(const Graph& g) {
  std::map<VariableId, bool> seen;
  std::vector<Graph> out;
  std::vector<VariableId> stack;
  for (auto start : g.nodes()) {
    if (seen[start]) continue;
    std::vector<VariableId> members;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (auto w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    // Nodes are visited in ascending order, so components come out ordered
    // by their smallest member.
    out.push_back(g.induced(members));
  }
  return out;
}

bool is_connected(const Graph& g) {
  return g.size() <= 1 || connected_components(g).size() == 1;
}

std::optional<IndependenceVerdict> VerdictCache::find(VariableId a,
                                                      VariableId b) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(ordered_pair(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void VerdictCache::insert(VariableId a, VariableId b,
                          const IndependenceVerdict& verdict) {
  std::lock_guard lock(mutex_);
  entries_.emplace(ordered_pair(a, b), verdict);
}

std::size_t VerdictCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::map<NodePair, IndependenceVerdict> VerdictCache::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

VariableTester::VariableTester(std::span<const DiscretizedFeature> variables,
                               std::shared_ptr<const PairTest> test)
    : variables_(variables), test_(std::move(test)) {
  if (!test_) throw ArgumentError("tester needs a pair test");
}

const DiscretizedFeature& VariableTester::variable(VariableId id) const {
  if (id == 0 || id > variables_.size()) {
    throw ArgumentError("variable id " + std::to_string(id) + " out of range");
  }
  return variables_[id - 1];
}

IndependenceVerdict VariableTester::operator()(VariableId a,
                                               VariableId b) const {
  const auto& va = variable(a);
  const auto& vb = variable(b);
  calls_.fetch_add(1);
  return test_->test(va, vb);
}

IndependenceVerdict cached_verdict(VariableId a, VariableId b,
                                   const VariableTester& tester,
                                   VerdictCache& cache) {
  if (auto hit = cache.find(a, b)) return *hit;
  auto verdict = tester(a, b);
  cache.insert(a, b, verdict);
  return verdict;
}

DependencyGraph build_graph(const VariableTester& tester,
                            std::span<const VariableId> nodes,
                            VerdictCache& cache, unsigned threads) {
  for (auto v : nodes) {
    if (tester.variable(v).is_constant) {
      throw ArgumentError("node " + std::to_string(v) +
                          " is a constant variable");
    }
  }
  DependencyGraph out{Graph(std::vector<VariableId>(nodes.begin(), nodes.end())), {}};
  const auto& sorted = out.graph.nodes();

  std::vector<NodePair> pairs;
  pairs.reserve(sorted.size() * (sorted.size() - (sorted.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      pairs.emplace_back(sorted[i], sorted[j]);
    }
  }

  std::vector<std::size_t> missing;
  out.tests.resize(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out.tests[k].pair = pairs[k];
    if (auto hit = cache.find(pairs[k].first, pairs[k].second)) {
      out.tests[k].verdict = *hit;
    } else {
      missing.push_back(k);
    }
  }
  parallel_for(missing.size(), threads, [&](std::size_t m) {
    const auto k = missing[m];
    out.tests[k].verdict = tester(pairs[k].first, pairs[k].second);
  });
  for (auto k : missing) {
    cache.insert(pairs[k].first, pairs[k].second, out.tests[k].verdict);
  }

  for (const auto& record : out.tests) {
    if (!record.verdict.independent) {
      out.graph.add_edge(record.pair.first, record.pair.second);
    }
  }
  return out;
}

}  // namespace pfa
