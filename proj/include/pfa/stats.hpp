#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "pfa/binning.hpp"

namespace pfa {

/// Joint bin counts of two discretized variables together with the counts
/// expected under independence, f_E(i,j) = row_i * col_j / N.
struct ContingencyTable {
  std::size_t rows = 0;  // bins of the first variable
  std::size_t cols = 0;  // bins of the second variable
  std::vector<std::uint64_t> observed;  // row-major rows x cols
  std::vector<double> expected;         // row-major rows x cols
  std::vector<std::uint64_t> row_marginals;
  std::vector<std::uint64_t> col_marginals;
  std::uint64_t n = 0;

  std::uint64_t observed_at(std::size_t i, std::size_t j) const {
    return observed[i * cols + j];
  }
  double expected_at(std::size_t i, std::size_t j) const {
    return expected[i * cols + j];
  }
  ContingencyTable transposed() const;
};

/// Builds a table from explicit observed counts (marginals and expectations
/// are derived). Mostly useful for tests and hand-made tables.
ContingencyTable table_from_counts(std::size_t rows, std::size_t cols,
                                   std::vector<std::uint64_t> observed);

ContingencyTable contingency(const DiscretizedFeature& a,
                             const DiscretizedFeature& b);

/// Pearson statistic: sum over cells of (f_O - f_E)^2 / f_E, accumulated in
/// row-major order.
double chi_square_statistic(const ContingencyTable& t);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Upper-tail probability of the chi-square distribution with `dof` degrees
/// of freedom: Q(dof/2, chi2/2).
double chi_square_p_value(double chi2, std::uint64_t dof);

enum class DofMode {
  independence,     // (k-1)(l-1)
  cells_minus_one,  // k*l - 1, the goodness-of-fit default
};

std::string_view to_string(DofMode mode);
DofMode parse_dof_mode(std::string_view text);

std::uint64_t degrees_of_freedom(const ContingencyTable& t, DofMode mode);

struct TestOptions {
  double alpha = 0.01;
  double min_expected = 5.0;
  DofMode dof_mode = DofMode::independence;
};

struct IndependenceVerdict {
  double chi2 = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  bool independent = true;
  /// All expected counts reach TestOptions::min_expected.
  bool guard_ok = true;
  /// Smallest expected count of the table (0 when no table was built).
  double min_expected_count = 0.0;

  friend bool operator==(const IndependenceVerdict&,
                         const IndependenceVerdict&) = default;
};

/// Chi-square test of independence. A constant variable is independent of
/// everything (chi2 = 0, p = 1) without building a table. Independence is
/// rejected only when p < alpha.
IndependenceVerdict is_independent(const DiscretizedFeature& a,
                                   const DiscretizedFeature& b,
                                   const TestOptions& options = {});

/// Mutual information in nats.
double mutual_information(const ContingencyTable& t);
double mutual_information(const DiscretizedFeature& a,
                          const DiscretizedFeature& b);

/// Shannon entropy of the bin distribution in nats.
double entropy(const DiscretizedFeature& a);

/// Pairwise dependency test over discretized variables.
class PairTest {
 public:
  virtual ~PairTest() = default;
  virtual IndependenceVerdict test(const DiscretizedFeature& a,
                                   const DiscretizedFeature& b) const = 0;
};

class ChiSquarePairTest final : public PairTest {
 public:
  explicit ChiSquarePairTest(TestOptions options) : options_(options) {}
  IndependenceVerdict test(const DiscretizedFeature& a,
                           const DiscretizedFeature& b) const override;
  const TestOptions& options() const noexcept { return options_; }

 private:
  TestOptions options_;
};

/// Declares two variables dependent when their mutual information exceeds a
/// threshold. The chi-square fields are still filled in for reporting.
class MutualInformationPairTest final : public PairTest {
 public:
  MutualInformationPairTest(double threshold, TestOptions options)
      : threshold_(threshold), options_(options) {}
  IndependenceVerdict test(const DiscretizedFeature& a,
                           const DiscretizedFeature& b) const override;

 private:
  double threshold_;
  TestOptions options_;
};

}  // namespace pfa
