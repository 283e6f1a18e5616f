#include "pfa/binning.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pfa/errors.hpp"
#include "pfa/parallel.hpp"

namespace pfa {

std::vector<std::size_t> DiscretizedFeature::bin_sizes() const {
  std::vector<std::size_t> sizes(n_bins, 0);
  for (auto b : bin_of_point) ++sizes[b];
  return sizes;
}

DiscretizedFeature discretize(std::span<const double> values, std::size_t nu) {
  if (values.empty()) throw ArgumentError("cannot discretize an empty sequence");
  if (nu < 1) throw ArgumentError("nu must be at least 1");

  DiscretizedFeature out;
  out.bin_of_point.assign(values.size(), 0);

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi <= *lo) {
    out.is_constant = true;
    return out;
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  const std::size_t n = order.size();
  std::uint32_t bin = 0;
  std::size_t pos = 0;
  bool have_full_bin = false;
  while (pos < n) {
    if (n - pos < nu) {
      // Remainder joins the last full bin; without one everything is a
      // single bin.
      const std::uint32_t target = have_full_bin ? bin - 1 : 0;
      for (; pos < n; ++pos) out.bin_of_point[order[pos]] = target;
      break;
    }
    std::size_t end = pos + nu;  // one past the last point in this bin
    while (end < n && values[order[end]] == values[order[end - 1]]) ++end;
    for (; pos < end; ++pos) out.bin_of_point[order[pos]] = bin;
    ++bin;
    have_full_bin = true;
  }
  out.n_bins = std::max<std::uint32_t>(bin, 1);
  if (out.n_bins == 1) out.is_constant = true;
  return out;
}

std::vector<DiscretizedFeature> discretize_all(const Dataset& ds,
                                               std::size_t nu,
                                               unsigned threads) {
  std::vector<DiscretizedFeature> out(ds.n_variables());
  parallel_for(ds.n_variables(), threads, [&](std::size_t r) {
    try {
      out[r] = discretize(ds.row(r), nu);
    } catch (const ArgumentError& e) {
      throw ArgumentError("row " + std::to_string(r + 1) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace pfa
