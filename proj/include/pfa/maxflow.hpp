#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace pfa {

/// Integer-capacity flow network solved with Dinic's algorithm.
class FlowNetwork {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

  explicit FlowNetwork(std::size_t n_vertices);

  /// Adds an arc and its zero-capacity residual twin.
  void add_arc(std::size_t from, std::size_t to, std::int64_t capacity);

  /// Pushes flow from source to sink, stopping early once `limit` units
  /// have been routed. Previously routed flow is kept, so call reset()
  /// before solving another source/sink pair.
  std::int64_t max_flow(std::size_t source, std::size_t sink,
                        std::int64_t limit = kUnbounded);

  /// Vertices reachable from `source` in the residual network.
  std::vector<bool> residual_reachable(std::size_t source) const;

  /// Restores all arcs to their original capacities.
  void reset();

  std::size_t vertex_count() const noexcept { return head_.size(); }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t capacity;
    std::int64_t residual;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  std::int64_t augment(std::size_t v, std::size_t sink, std::int64_t pushed);

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> head_;  // arc indices per vertex
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace pfa
