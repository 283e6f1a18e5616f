#include "pfa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pfa/errors.hpp"

namespace pfa {

namespace {

void finish_table(ContingencyTable& t) {
  t.row_marginals.assign(t.rows, 0);
  t.col_marginals.assign(t.cols, 0);
  t.n = 0;
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      const auto count = t.observed[i * t.cols + j];
      t.row_marginals[i] += count;
      t.col_marginals[j] += count;
      t.n += count;
    }
  }
  t.expected.assign(t.rows * t.cols, 0.0);
  if (t.n == 0) return;
  const double n = static_cast<double>(t.n);
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      t.expected[i * t.cols + j] = static_cast<double>(t.row_marginals[i]) *
                                   static_cast<double>(t.col_marginals[j]) / n;
    }
  }
}

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 10'000'000;

// log of x^a e^-x / Gamma(a)
double log_prefactor(double a, double x) {
  return a * std::log(x) - x - log_gamma(a);
}

// P(a, x) by its power series; converges for all x but is used for x < a+1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by its continued fraction (modified Lentz); used for x >= a+1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

void check_gamma_args(double a, double x) {
  if (!std::isfinite(a) || !std::isfinite(x)) {
    throw ArgumentError("incomplete gamma requires finite arguments");
  }
  if (a <= 0.0) throw ArgumentError("incomplete gamma requires a > 0");
  if (x < 0.0) throw ArgumentError("incomplete gamma requires x >= 0");
}

}  // namespace

ContingencyTable ContingencyTable::transposed() const {
  ContingencyTable t;
  t.rows = cols;
  t.cols = rows;
  t.observed.resize(observed.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      t.observed[j * rows + i] = observed[i * cols + j];
    }
  }
  finish_table(t);
  return t;
}

ContingencyTable table_from_counts(std::size_t rows, std::size_t cols,
                                   std::vector<std::uint64_t> observed) {
  if (rows == 0 || cols == 0 || observed.size() != rows * cols) {
    throw ArgumentError("observed counts do not match table shape");
  }
  ContingencyTable t;
  t.rows = rows;
  t.cols = cols;
  t.observed = std::move(observed);
  finish_table(t);
  return t;
}

ContingencyTable contingency(const DiscretizedFeature& a,
                             const DiscretizedFeature& b) {
  if (a.n_points() != b.n_points()) {
    throw ArgumentError("variables cover different numbers of points (" +
                        std::to_string(a.n_points()) + " vs " +
                        std::to_string(b.n_points()) + ")");
  }
  ContingencyTable t;
  t.rows = a.n_bins;
  t.cols = b.n_bins;
  t.observed.assign(t.rows * t.cols, 0);
  for (std::size_t p = 0; p < a.n_points(); ++p) {
    ++t.observed[a.bin_of_point[p] * t.cols + b.bin_of_point[p]];
  }
  finish_table(t);
  return t;
}

double chi_square_statistic(const ContingencyTable& t) {
  double chi2 = 0.0;
  for (std::size_t c = 0; c < t.observed.size(); ++c) {
    const double e = t.expected[c];
    if (!(e > 0.0)) {
      throw DegenerateTableError("expected count is zero in cell (" +
                                 std::to_string(c / t.cols) + ", " +
                                 std::to_string(c % t.cols) + ")");
    }
    const double diff = static_cast<double>(t.observed[c]) - e;
    chi2 += diff * diff / e;
  }
  return chi2;
}

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_square_p_value(double chi2, std::uint64_t dof) {
  if (!std::isfinite(chi2)) throw ArgumentError("chi2 must be finite");
  if (chi2 < 0.0) throw ArgumentError("chi2 must be non-negative");
  if (dof == 0) throw ArgumentError("degrees of freedom must be positive");
  const double q = regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * chi2);
  return std::clamp(q, 0.0, 1.0);
}

std::string_view to_string(DofMode mode) {
  switch (mode) {
    case DofMode::independence:
      return "independence";
    case DofMode::cells_minus_one:
      return "cells_minus_one";
  }
  return "independence";
}

DofMode parse_dof_mode(std::string_view text) {
  if (text == "independence") return DofMode::independence;
  if (text == "cells_minus_one") return DofMode::cells_minus_one;
  throw ArgumentError("unknown dof mode '" + std::string(text) + "'");
}

std::uint64_t degrees_of_freedom(const ContingencyTable& t, DofMode mode) {
  if (mode == DofMode::cells_minus_one) return t.rows * t.cols - 1;
  return (t.rows - 1) * (t.cols - 1);
}

IndependenceVerdict is_independent(const DiscretizedFeature& a,
                                   const DiscretizedFeature& b,
                                   const TestOptions& options) {
  if (a.n_points() != b.n_points()) {
    throw ArgumentError("variables cover different numbers of points");
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
  IndependenceVerdict v;
  if (a.is_constant || b.is_constant) return v;

  const auto table = contingency(a, b);
  v.chi2 = chi_square_statistic(table);
  v.dof = degrees_of_freedom(table, options.dof_mode);
  v.p_value = chi_square_p_value(v.chi2, v.dof);
  v.independent = v.p_value >= options.alpha;
  v.min_expected_count = *std::min_element(table.expected.begin(), table.expected.end());
  v.guard_ok = v.min_expected_count >= options.min_expected;
  return v;
}

double mutual_information(const ContingencyTable& t) {
  if (t.n == 0) return 0.0;
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      const auto count = t.observed_at(i, j);
      if (count == 0) continue;
      const double joint = static_cast<double>(count);
      // p(i,j) / (p(i) p(j)) = count * N / (row_i * col_j)
      const double ratio = joint * n /
                           (static_cast<double>(t.row_marginals[i]) *
                            static_cast<double>(t.col_marginals[j]));
      mi += joint / n * std::log(ratio);
    }
  }
  return std::max(mi, 0.0);
}

double mutual_information(const DiscretizedFeature& a,
                          const DiscretizedFeature& b) {
  return mutual_information(contingency(a, b));
}

double entropy(const DiscretizedFeature& a) {
  const double n = static_cast<double>(a.n_points());
  double h = 0.0;
  for (auto size : a.bin_sizes()) {
    if (size == 0) continue;
    const double p = static_cast<double>(size) / n;
    h -= p * std::log(p);
  }
  return h;
}

IndependenceVerdict ChiSquarePairTest::test(const DiscretizedFeature& a,
                                            const DiscretizedFeature& b) const {
  return is_independent(a, b, options_);
}

IndependenceVerdict MutualInformationPairTest::test(
    const DiscretizedFeature& a, const DiscretizedFeature& b) const {
  auto v = is_independent(a, b, options_);
  if (a.is_constant || b.is_constant) return v;
  v.independent = mutual_information(a, b) <= threshold_;
  return v;
}

}  // namespace pfa
