#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfa {

/// 1-based row position of a variable in the source CSV. Output rows come
/// first, so with one output the first feature has id 2.
using VariableId = std::uint32_t;

/// Measurement matrix: one row per variable, one column per data point.
/// The first n_outputs rows are output variables, the rest are features.
/// Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<std::vector<double>> rows, std::size_t n_outputs);

  std::size_t n_points() const noexcept { return n_points_; }
  std::size_t n_outputs() const noexcept { return n_outputs_; }
  std::size_t n_features() const noexcept { return n_rows_ - n_outputs_; }
  std::size_t n_variables() const noexcept { return n_rows_; }

  /// 0-based row access.
  std::span<const double> row(std::size_t index) const;
  std::span<const double> variable(VariableId id) const;

  bool is_output(VariableId id) const noexcept {
    return id >= 1 && id <= n_outputs_;
  }
  std::vector<VariableId> output_ids() const;
  std::vector<VariableId> feature_ids() const;

  /// Keeps the given data-point columns, in the given order.
  Dataset select_columns(std::span<const std::size_t> columns) const;

  friend bool operator==(const Dataset& a, const Dataset& b) = default;

 private:
  std::vector<double> values_;  // row-major
  std::size_t n_rows_ = 0;
  std::size_t n_points_ = 0;
  std::size_t n_outputs_ = 0;
};

Dataset parse_csv(std::string_view text, std::size_t n_outputs = 1);
Dataset load_csv(const std::filesystem::path& path, std::size_t n_outputs = 1);

/// Shortest round-trip decimal representation; load_csv(save_csv(ds)) == ds.
std::string to_csv(const Dataset& ds);
void save_csv(const Dataset& ds, const std::filesystem::path& path);

/// Uniform random subset of round(fraction * n_points) columns, kept in
/// their original relative order. Deterministic in (ds, fraction, seed).
Dataset subsample(const Dataset& ds, double fraction, std::uint64_t seed);

/// Column indices chosen by subsample(), ascending.
std::vector<std::size_t> subsample_columns(std::size_t n_points,
                                           double fraction,
                                           std::uint64_t seed);

}  // namespace pfa
