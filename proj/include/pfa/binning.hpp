#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pfa/dataset.hpp"

namespace pfa {

/// A variable's values mapped to ordinal bins.
///
/// Bins are formed by walking the values in ascending order: a bin is closed
/// once it holds at least `nu` points and the next value is strictly larger
/// than the bin's last value, so equal values never straddle a boundary. A
/// remainder of fewer than `nu` points is joined with the last full bin.
///
/// `is_constant` is set when all values are equal, and also when the walk
/// produces a single bin (for example fewer than `nu` points): a one-bin
/// variable carries no contingency information and is independent of
/// everything.
struct DiscretizedFeature {
  std::vector<std::uint32_t> bin_of_point;
  std::uint32_t n_bins = 1;
  bool is_constant = false;

  std::size_t n_points() const noexcept { return bin_of_point.size(); }

  /// Number of points per bin.
  std::vector<std::size_t> bin_sizes() const;
};

DiscretizedFeature discretize(std::span<const double> values, std::size_t nu);

/// One discretization per dataset row (outputs included), in row order.
/// Rows are processed on up to `threads` worker threads.
std::vector<DiscretizedFeature> discretize_all(const Dataset& ds,
                                               std::size_t nu,
                                               unsigned threads = 1);

}  // namespace pfa
