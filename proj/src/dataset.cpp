#include "pfa/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "pfa/errors.hpp"

namespace pfa {

Dataset::Dataset(std::vector<std::vector<double>> rows, std::size_t n_outputs)
    : n_rows_(rows.size()), n_outputs_(n_outputs) {
  if (rows.empty()) throw ArgumentError("dataset has no rows");
  if (n_outputs >= rows.size()) {
    throw ArgumentError("dataset needs at least one feature row: " +
                        std::to_string(rows.size()) + " rows, " +
                        std::to_string(n_outputs) + " outputs");
  }
  n_points_ = rows.front().size();
  if (n_points_ == 0) throw ArgumentError("dataset has no data points");
  values_.reserve(n_rows_ * n_points_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n_points_) {
      throw ArgumentError("row " + std::to_string(r + 1) + " has " +
                          std::to_string(rows[r].size()) +
                          " entries, expected " + std::to_string(n_points_));
    }
    for (double v : rows[r]) {
      if (!std::isfinite(v)) {
        throw ArgumentError("row " + std::to_string(r + 1) +
                            " contains a non-finite value");
      }
    }
    values_.insert(values_.end(), rows[r].begin(), rows[r].end());
  }
}

std::span<const double> Dataset::row(std::size_t index) const {
  if (index >= n_rows_) {
    throw ArgumentError("row index " + std::to_string(index) +
                        " out of range");
  }
  return {values_.data() + index * n_points_, n_points_};
}

std::span<const double> Dataset::variable(VariableId id) const {
  if (id == 0 || id > n_rows_) {
    throw ArgumentError("variable id " + std::to_string(id) +
                        " out of range 1.." + std::to_string(n_rows_));
  }
  return row(id - 1);
}

std::vector<VariableId> Dataset::output_ids() const {
  std::vector<VariableId> ids(n_outputs_);
  std::iota(ids.begin(), ids.end(), VariableId{1});
  return ids;
}

std::vector<VariableId> Dataset::feature_ids() const {
  std::vector<VariableId> ids(n_features());
  std::iota(ids.begin(), ids.end(), static_cast<VariableId>(n_outputs_ + 1));
  return ids;
}

Dataset Dataset::select_columns(std::span<const std::size_t> columns) const {
  std::vector<std::vector<double>> rows(n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r) {
    auto src = row(r);
    rows[r].reserve(columns.size());
    for (std::size_t c : columns) {
      if (c >= n_points_) throw ArgumentError("column index out of range");
      rows[r].push_back(src[c]);
    }
  }
  return Dataset(std::move(rows), n_outputs_);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  auto where = [&] {
    return " at row " + std::to_string(row) + ", column " +
           std::to_string(col);
  };
  if (cell.empty()) throw ParseError("missing value" + where(), row, col);
  // from_chars rejects a leading '+', which some writers emit.
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("value out of range '" + std::string(cell) + "'" + where(),
                     row, col);
  }
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("not a number '" + std::string(cell) + "'" + where(), row,
                     col);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + std::string(cell) + "'" + where(),
                     row, col);
  }
  return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, std::size_t n_outputs) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) {
      // Blank lines are only tolerated at the end of the file.
      if (trim(text).empty()) break;
      throw FormatError("blank line " + std::to_string(line_no) +
                        " inside data");
    }
    std::vector<double> values;
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      ++col;
      values.push_back(parse_cell(line.substr(start, comma - start), line_no, col));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      const std::size_t expected = rows.front().size();
      const std::size_t offending = std::min(values.size(), expected) + 1;
      throw FormatError("ragged input: row " + std::to_string(line_no) +
                        " has " + std::to_string(values.size()) +
                        " columns, expected " + std::to_string(expected) +
                        " (column " + std::to_string(offending) +
                        " is incomplete)");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw FormatError("empty input");
  if (n_outputs >= rows.size()) {
    throw FormatError("input has " + std::to_string(rows.size()) +
                      " rows but " + std::to_string(n_outputs) +
                      " output rows were requested; at least one feature row "
                      "is required");
  }
  return Dataset(std::move(rows), n_outputs);
}

Dataset load_csv(const std::filesystem::path& path, std::size_t n_outputs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), n_outputs);
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  out.reserve(ds.n_variables() * ds.n_points() * 12);
  char buf[64];
  for (std::size_t r = 0; r < ds.n_variables(); ++r) {
    auto row = ds.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out.push_back(',');
      auto res = std::to_chars(buf, buf + sizeof buf, row[c]);
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << to_csv(ds);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::size_t> subsample_columns(std::size_t n_points,
                                           double fraction,
                                           std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ArgumentError("fraction must lie in (0, 1], got " +
                        std::to_string(fraction));
  }
  const auto keep =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n_points)));
  if (keep < 1) throw ArgumentError("fraction keeps no data points");

  std::vector<std::size_t> columns(n_points);
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  if (keep == n_points) return columns;
  std::mt19937_64 rng(seed);
  std::shuffle(columns.begin(), columns.end(), rng);
  columns.resize(keep);
  std::sort(columns.begin(), columns.end());
  return columns;
}

Dataset subsample(const Dataset& ds, double fraction, std::uint64_t seed) {
  auto columns = subsample_columns(ds.n_points(), fraction, seed);
  return ds.select_columns(columns);
}

}  // namespace pfa
