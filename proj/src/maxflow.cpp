#include "pfa/maxflow.hpp"

#include <algorithm>
#include <queue>

#include "pfa/errors.hpp"

namespace pfa {

FlowNetwork::FlowNetwork(std::size_t n_vertices) : head_(n_vertices) {}

void FlowNetwork::add_arc(std::size_t from, std::size_t to,
                          std::int64_t capacity) {
  if (from >= head_.size() || to >= head_.size()) {
    throw ArgumentError("arc endpoint out of range");
  }
  if (capacity < 0) throw ArgumentError("negative arc capacity");
  head_[from].push_back(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  head_[to].push_back(arcs_.size());
  arcs_.push_back({from, 0, 0});
}

void FlowNetwork::reset() {
  for (auto& arc : arcs_) arc.residual = arc.capacity;
}

bool FlowNetwork::build_levels(std::size_t source, std::size_t sink) {
  level_.assign(head_.size(), -1);
  level_[source] = 0;
  std::queue<std::size_t> queue;
  queue.push(source);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (auto a : head_[v]) {
      const auto& arc = arcs_[a];
      if (arc.residual > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[v] + 1;
        queue.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t FlowNetwork::augment(std::size_t v, std::size_t sink,
                                  std::int64_t pushed) {
  if (v == sink) return pushed;
  for (auto& i = cursor_[v]; i < head_[v].size(); ++i) {
    const auto a = head_[v][i];
    auto& arc = arcs_[a];
    if (arc.residual <= 0 || level_[arc.to] != level_[v] + 1) continue;
    const auto got = augment(arc.to, sink, std::min(pushed, arc.residual));
    if (got > 0) {
      arc.residual -= got;
      arcs_[a ^ 1].residual += got;
      return got;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::max_flow(std::size_t source, std::size_t sink,
                                   std::int64_t limit) {
  if (source >= head_.size() || sink >= head_.size() || source == sink) {
    throw ArgumentError("invalid source/sink");
  }
  std::int64_t flow = 0;
  while (flow < limit && build_levels(source, sink)) {
    cursor_.assign(head_.size(), 0);
    while (flow < limit) {
      const auto got = augment(source, sink, limit - flow);
      if (got == 0) break;
      flow += got;
    }
  }
  return flow;
}

std::vector<bool> FlowNetwork::residual_reachable(std::size_t source) const {
  std::vector<bool> seen(head_.size(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto a : head_[v]) {
      const auto& arc = arcs_[a];
      if (arc.residual > 0 && !seen[arc.to]) {
        seen[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace pfa
