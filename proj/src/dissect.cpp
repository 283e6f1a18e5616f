#include "pfa/dissect.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "pfa/errors.hpp"
#include "pfa/maxflow.hpp"

namespace pfa {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Vertex-split network over a graph with local indices 0..n-1: node i has
// in-vertex 2i and out-vertex 2i+1 joined by a unit arc; every edge becomes
// two unbounded arcs out->in.
class SplitNetwork {
 public:
  explicit SplitNetwork(const Graph& g) : nodes_(g.nodes()), net_(2 * nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      net_.add_arc(2 * i, 2 * i + 1, 1);
    }
    for (auto [a, b] : g.edges()) {
      const auto ia = local(a);
      const auto ib = local(b);
      net_.add_arc(2 * ia + 1, 2 * ib, FlowNetwork::kUnbounded);
      net_.add_arc(2 * ib + 1, 2 * ia, FlowNetwork::kUnbounded);
    }
  }

  std::size_t local(VariableId v) const {
    return static_cast<std::size_t>(
        std::lower_bound(nodes_.begin(), nodes_.end(), v) - nodes_.begin());
  }

  /// Minimum s-t separator if it has fewer than `limit` nodes, else nullopt.
  std::optional<std::vector<VariableId>> separator(VariableId s, VariableId t,
                                                   std::int64_t limit) {
    net_.reset();
    const auto is = local(s);
    const auto it = local(t);
    const auto flow = net_.max_flow(2 * is + 1, 2 * it, limit);
    if (flow >= limit) return std::nullopt;
    const auto reach = net_.residual_reachable(2 * is + 1);
    std::vector<VariableId> cut;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (i == is || i == it) continue;
      if (reach[2 * i] && !reach[2 * i + 1]) cut.push_back(nodes_[i]);
    }
    return cut;
  }

 private:
  const std::vector<VariableId>& nodes_;
  FlowNetwork net_;
};

void check_cut_preconditions(const Graph& g) {
  if (g.size() < 2) {
    throw ArgumentError("a node cut needs at least two nodes, got " +
                        std::to_string(g.size()));
  }
  if (is_complete(g)) {
    throw NoCutExistsError("complete graph on " + std::to_string(g.size()) +
                           " nodes has no node cut");
  }
}

}  // namespace

std::uint64_t TieBreak::key(VariableId id) const {
  if (!seed) return id;
  return splitmix64(*seed ^ splitmix64(id));
}

bool TieBreak::before(VariableId a, VariableId b) const {
  const auto ka = key(a);
  const auto kb = key(b);
  return ka != kb ? ka < kb : a < b;
}

std::vector<VariableId> min_st_node_cut(const Graph& g, VariableId s,
                                        VariableId t) {
  if (!g.contains(s) || !g.contains(t) || s == t) {
    throw ArgumentError("terminals must be two distinct nodes of the graph");
  }
  if (g.has_edge(s, t)) {
    throw ArgumentError("adjacent terminals cannot be separated");
  }
  SplitNetwork net(g);
  return *net.separator(s, t, FlowNetwork::kUnbounded);
}

std::vector<VariableId> min_node_cut(const Graph& g, const TieBreak& tie) {
  check_cut_preconditions(g);
  if (!is_connected(g)) return {};

  std::vector<VariableId> order = g.nodes();
  std::sort(order.begin(), order.end(),
            [&](VariableId a, VariableId b) { return tie.before(a, b); });

  // Some minimum cut either leaves v (of minimum degree) in place, and then
  // separates v from a non-neighbor, or contains v, and then separates two
  // non-adjacent neighbors of v.
  VariableId v = order.front();
  for (auto u : order) {
    if (g.degree(u) < g.degree(v)) v = u;
  }

  std::vector<std::pair<VariableId, VariableId>> candidates;
  for (auto w : order) {
    if (w != v && !g.has_edge(v, w)) candidates.emplace_back(v, w);
  }
  std::vector<VariableId> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
  std::sort(nbrs.begin(), nbrs.end(),
            [&](VariableId a, VariableId b) { return tie.before(a, b); });
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (!g.has_edge(nbrs[i], nbrs[j])) candidates.emplace_back(nbrs[i], nbrs[j]);
    }
  }

  SplitNetwork net(g);
  std::vector<VariableId> best;
  auto limit = static_cast<std::int64_t>(g.size());  // strictly above any cut
  for (auto [s, t] : candidates) {
    // The extracted cut is the one closest to the source.
    if (tie.before(t, s)) std::swap(s, t);
    if (auto cut = net.separator(s, t, limit)) {
      best = std::move(*cut);
      limit = static_cast<std::int64_t>(best.size());
      if (limit == 1) break;  // a connected graph has no smaller cut
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<VariableId> brute_force_min_node_cut(const Graph& g) {
  constexpr std::size_t kMaxNodes = 14;
  if (g.size() > kMaxNodes) {
    throw ArgumentError("brute-force cut is limited to " +
                        std::to_string(kMaxNodes) + " nodes");
  }
  check_cut_preconditions(g);
  if (!is_connected(g)) return {};

  const auto& nodes = g.nodes();
  const std::size_t n = nodes.size();
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g.has_edge(nodes[i], nodes[j])) adj[i] |= 1u << j;
    }
  }
  const std::uint32_t all = (1u << n) - 1;
  auto disconnected_without = [&](std::uint32_t removed) {
    const std::uint32_t alive = all & ~removed;
    std::uint32_t seen = alive & (~alive + 1);  // lowest alive node
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (auto f = frontier; f; f &= f - 1) {
        next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      }
      frontier = next & alive & ~seen;
      seen |= frontier;
    }
    return seen != alive;
  };

  // Combinations of k indices in lexicographic order.
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (auto i : idx) mask |= 1u << i;
      if (disconnected_without(mask)) {
        std::vector<VariableId> cut;
        for (auto i : idx) cut.push_back(nodes[i]);
        return cut;
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  // Unreachable for a connected incomplete graph: removing all but two
  // non-adjacent nodes always disconnects it.
  throw NoCutExistsError("no node cut found");
}

std::vector<VariableId> DissectionResult::surviving_nodes() const {
  std::vector<VariableId> out;
  for (const auto& g : complete_subgraphs) {
    out.insert(out.end(), g.nodes().begin(), g.nodes().end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VariableId> DissectionResult::removed_nodes() const {
  std::vector<VariableId> out;
  for (const auto& r : removals) out.insert(out.end(), r.nodes.begin(), r.nodes.end());
  std::sort(out.begin(), out.end());
  return out;
}

DissectionResult dissect(const Graph& g, const TieBreak& tie) {
  DissectionResult result;
  std::map<VariableId, Graph> pending;  // keyed by smallest member

  auto sort_parts = [&](const Graph& graph) {
    for (auto& part : connected_components(graph)) {
      if (is_complete(part)) {
        result.complete_subgraphs.push_back(std::move(part));
      } else {
        const auto key = part.nodes().front();
        pending.emplace(key, std::move(part));
      }
    }
  };

  sort_parts(g);
  std::size_t step = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Graph& component = node.mapped();
    auto cut = min_node_cut(component, tie);
    result.removals.push_back({++step, cut, component.nodes()});
    sort_parts(component.without(cut));
  }

  std::sort(result.complete_subgraphs.begin(), result.complete_subgraphs.end(),
            [](const Graph& a, const Graph& b) {
              return a.nodes().front() < b.nodes().front();
            });
  return result;
}

}  // namespace pfa
