#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "pfa/dataset.hpp"
#include "pfa/depgraph.hpp"

namespace pfa {

enum class Scenario {
  example1,  // x4 = 2 x1 x2 x3, x5 = x1 x2; no outputs
  example2,  // x3 = x1 x2; y = [x1 >= median(x1)] as row 1
  example3,  // chain x6 = x1 x2 ... x9 = x4 x5 with x2, x4 unmeasured
  example4,  // y = [x1 + x2 * 10^-0.5 >= 4] as row 1
  dag,       // random base variables plus derived sums/products
};

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view text);

/// Layout of the random `dag` scenario. Each derived variable is the sum or
/// product of 2..max_parents distinct base variables.
struct DagOptions {
  std::size_t n_base = 10;
  std::size_t n_derived = 10;
  std::size_t max_parents = 2;
  /// Emit rows in a seeded random order instead of bases first.
  bool shuffle_rows = true;
};

struct SynthSpec {
  Scenario scenario = Scenario::example1;
  std::size_t n_points = 5000;
  std::uint64_t seed = 42;
  /// Base variables are i.i.d. uniform on [low, high].
  double low = 0.0;
  double high = 5.0;
  DagOptions dag;
};

struct SynthData {
  Dataset dataset;
  /// Rows holding independent base variables (the expected principal set).
  std::vector<VariableId> base_ids;
};

SynthData generate_with_truth(const SynthSpec& spec);
Dataset generate(const SynthSpec& spec);

/// Erdos-Renyi graph on nodes 1..n; each pair is joined with probability
/// p_edge. Deterministic in seed.
Graph random_graph(std::size_t n, double p_edge, std::uint64_t seed);

}  // namespace pfa
