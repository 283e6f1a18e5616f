#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pfa/depgraph.hpp"

namespace pfa {

/// Ordering used wherever several minimum cuts are equally valid. Without a
/// seed nodes are visited in ascending id order; a seed replaces that order
/// with a fixed pseudo-random permutation of the ids, exposing alternative
/// (equally minimal) dissections.
struct TieBreak {
  std::optional<std::uint64_t> seed;

  std::uint64_t key(VariableId id) const;
  /// Strict weak order: by key, then by id.
  bool before(VariableId a, VariableId b) const;
};

/// Smallest set of nodes whose removal disconnects `g`, found by max-flow on
/// the vertex-split network. Returns an empty set for a disconnected graph.
/// Throws ArgumentError for fewer than two nodes and NoCutExistsError for a
/// complete graph.
std::vector<VariableId> min_node_cut(const Graph& g, const TieBreak& tie = {});

/// Smallest s-t vertex separator for non-adjacent s and t (Menger).
std::vector<VariableId> min_st_node_cut(const Graph& g, VariableId s,
                                        VariableId t);

/// Exhaustive search over node subsets in ascending size, then lexicographic
/// order. Limited to 14 nodes.
std::vector<VariableId> brute_force_min_node_cut(const Graph& g);

struct Removal {
  std::size_t step = 0;  // 1-based
  std::vector<VariableId> nodes;
  std::vector<VariableId> from_component;
};

struct DissectionResult {
  /// Node-disjoint complete subgraphs, ordered by smallest member id.
  std::vector<Graph> complete_subgraphs;
  std::vector<Removal> removals;

  std::vector<VariableId> surviving_nodes() const;
  std::vector<VariableId> removed_nodes() const;
};

/// Repeatedly removes minimum node cuts from incomplete components until
/// only complete subgraphs are left. Incomplete components are processed in
/// ascending order of their smallest member id.
DissectionResult dissect(const Graph& g, const TieBreak& tie = {});

}  // namespace pfa
