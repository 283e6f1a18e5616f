#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "pfa/errors.hpp"
#include "pfa/stats.hpp"
#include "support/oracles.hpp"

using namespace pfa;

namespace {

DiscretizedFeature from_bins(std::vector<std::uint32_t> bins) {
  DiscretizedFeature f;
  f.n_bins = bins.empty() ? 1 : *std::max_element(bins.begin(), bins.end()) + 1;
  f.bin_of_point = std::move(bins);
  f.is_constant = f.n_bins == 1;
  return f;
}

// N points split into two equal halves.
DiscretizedFeature two_halves(std::size_t n) {
  std::vector<std::uint32_t> bins(n);
  for (std::size_t i = 0; i < n; ++i) bins[i] = i < n / 2 ? 0 : 1;
  return from_bins(bins);
}

DiscretizedFeature random_bins(std::mt19937_64& rng, std::size_t n, std::uint32_t k) {
  std::vector<std::uint32_t> bins(n);
  for (std::size_t i = 0; i < n; ++i) bins[i] = static_cast<std::uint32_t>(i % k);
  std::shuffle(bins.begin(), bins.end(), rng);
  return from_bins(bins);
}

}  // namespace

TEST_CASE("contingency of identical halves") {
  const auto a = two_halves(100);
  const auto t = contingency(a, a);
  CHECK(t.observed == std::vector<std::uint64_t>{50, 0, 0, 50});
  CHECK(t.expected == std::vector<double>{25, 25, 25, 25});
  CHECK(t.n == 100);
}

TEST_CASE("contingency with a constant variable") {
  const auto c = from_bins(std::vector<std::uint32_t>(9, 0));
  const auto b = from_bins({0, 1, 2, 0, 1, 2, 0, 0, 1});
  const auto t = contingency(c, b);
  CHECK(t.rows == 1);
  CHECK(t.cols == 3);
  CHECK(t.observed == std::vector<std::uint64_t>{4, 3, 2});
  for (std::size_t j = 0; j < 3; ++j) CHECK(t.expected_at(0, j) == doctest::Approx(t.observed_at(0, j)));
  CHECK(chi_square_statistic(t) == doctest::Approx(0.0));
}

TEST_CASE("contingency invariants") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_bins(rng, 300, 2 + trial % 5);
    const auto b = random_bins(rng, 300, 2 + trial % 7);
    const auto t = contingency(a, b);
    const auto tt = contingency(b, a);
    CHECK(tt.observed == t.transposed().observed);
    const double sum_expected = std::accumulate(t.expected.begin(), t.expected.end(), 0.0);
    CHECK(sum_expected == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(std::accumulate(t.observed.begin(), t.observed.end(), std::uint64_t{0}) == 300);
    for (std::size_t i = 0; i < t.rows; ++i) {
      std::uint64_t row = 0;
      for (std::size_t j = 0; j < t.cols; ++j) row += t.observed_at(i, j);
      CHECK(row == t.row_marginals[i]);
    }
    // Symmetry of the statistics.
    CHECK(chi_square_statistic(t) == doctest::Approx(chi_square_statistic(tt)).epsilon(1e-13));
    CHECK(mutual_information(a, b) == doctest::Approx(mutual_information(b, a)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(contingency(two_halves(10), two_halves(12)), ArgumentError);
}

TEST_CASE("chi-square statistic hand values") {
  CHECK(chi_square_statistic(table_from_counts(2, 2, {25, 25, 25, 25})) == 0.0);
  for (std::size_t n : {100u, 1000u, 5000u}) {
    const auto a = two_halves(n);
    CHECK(chi_square_statistic(contingency(a, a)) == static_cast<double>(n));
  }
  CHECK(chi_square_statistic(table_from_counts(2, 2, {10, 20, 20, 10})) ==
        doctest::Approx(100.0 / 15.0).epsilon(1e-15));
  CHECK_THROWS_AS(chi_square_statistic(table_from_counts(2, 2, {0, 0, 5, 5})),
                  DegenerateTableError);
}

TEST_CASE("chi-square is invariant under relabelling bins") {
  std::mt19937_64 rng(17);
  const auto a = random_bins(rng, 500, 4);
  auto b = random_bins(rng, 500, 3);
  const double before = chi_square_statistic(contingency(a, b));
  const std::vector<std::uint32_t> relabel{2, 0, 1};
  for (auto& bin : b.bin_of_point) bin = relabel[bin];
  CHECK(chi_square_statistic(contingency(a, b)) == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("p-values against published critical values") {
  CHECK(chi_square_p_value(0.0, 1) == 1.0);
  CHECK(chi_square_p_value(0.0, 37) == 1.0);
  CHECK(std::abs(chi_square_p_value(3.841, 1) - 0.05) < 1e-3);
  CHECK(std::abs(chi_square_p_value(13.277, 4) - 0.01) < 1e-3);
  CHECK_THROWS_AS(chi_square_p_value(std::nan(""), 2), ArgumentError);
  CHECK_THROWS_AS(chi_square_p_value(INFINITY, 2), ArgumentError);
  CHECK_THROWS_AS(chi_square_p_value(-1.0, 2), ArgumentError);
  CHECK_THROWS_AS(chi_square_p_value(1.0, 0), ArgumentError);
}

TEST_CASE("incomplete gamma agrees with quadrature") {
  const int dofs[] = {1, 2, 3, 4, 5, 7, 10, 20, 50, 100};
  const double scale[] = {0.02, 0.1, 0.3, 0.6, 0.9, 1.0, 1.2, 1.6, 2.5, 4.0};
  double worst = 0.0;
  for (int dof : dofs) {
    for (double s : scale) {
      const double chi2 = s * dof;
      const double diff = std::abs(chi_square_p_value(chi2, dof) -
                                   oracle::chi_square_upper_tail(chi2, dof));
      worst = std::max(worst, diff);
    }
  }
  CHECK(worst <= 1e-10);
  // P + Q = 1
  for (double a : {0.5, 3.0, 250.0, 5000.0}) {
    for (double x : {0.1 * a, a, a + 1.0, 3.0 * a}) {
      CHECK(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("incomplete gamma at large arguments") {
  // Normal approximation holds loosely at dof = 10^4.
  const double p = chi_square_p_value(10000.0, 10000);
  CHECK(p > 0.49);
  CHECK(p < 0.51);
  CHECK(chi_square_p_value(1e6, 10000) == 0.0);
  CHECK(chi_square_p_value(1e6, 1) == 0.0);
  CHECK(chi_square_p_value(1e-6, 10000) == doctest::Approx(1.0));
}

TEST_CASE("p-value is monotone decreasing in chi2") {
  for (std::uint64_t dof : {1u, 2u, 9u, 100u, 2401u}) {
    double previous = 1.0;
    for (int i = 0; i <= 400; ++i) {
      const double chi2 = static_cast<double>(dof) * 0.01 * i;
      const double p = chi_square_p_value(chi2, dof);
      CHECK(p <= previous + 1e-15);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      previous = p;
    }
  }
}

TEST_CASE("special-case verdicts") {
  const auto constant = from_bins(std::vector<std::uint32_t>(1000, 0));
  const auto a = two_halves(1000);

  const auto c = is_independent(constant, a);
  CHECK(c.independent);
  CHECK(c.chi2 == 0.0);
  CHECK(c.p_value == 1.0);
  CHECK(is_independent(constant, constant).independent);

  const auto same = is_independent(a, a, {0.01, 5.0, DofMode::independence});
  CHECK(same.chi2 == 1000.0);
  CHECK(same.dof == 1);
  CHECK(same.p_value < 1e-6);
  CHECK_FALSE(same.independent);
  CHECK(same.guard_ok);

  CHECK(is_independent(a, a, {0.01, 5.0, DofMode::cells_minus_one}).dof == 3);
  CHECK_THROWS_AS(is_independent(a, a, {0.0, 5.0, DofMode::independence}), ArgumentError);
  CHECK_THROWS_AS(is_independent(a, a, {1.0, 5.0, DofMode::independence}), ArgumentError);
}

TEST_CASE("observed equal to expected is independent for every alpha") {
  // 4x3 product table: every cell equals its expectation.
  std::vector<std::uint32_t> a, b;
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 3; ++j) {
      for (int r = 0; r < 10; ++r) {
        a.push_back(i);
        b.push_back(j);
      }
    }
  }
  const auto fa = from_bins(a);
  const auto fb = from_bins(b);
  for (double alpha : {1e-6, 0.01, 0.5, 0.999}) {
    const auto v = is_independent(fa, fb, {alpha, 5.0, DofMode::independence});
    CHECK(v.independent);
    CHECK(v.chi2 == 0.0);
  }
  CHECK(mutual_information(fa, fb) == doctest::Approx(0.0));
}

TEST_CASE("guard flags small expected counts") {
  std::mt19937_64 rng(2);
  const auto a = random_bins(rng, 40, 4);
  const auto b = random_bins(rng, 40, 4);
  const auto v = is_independent(a, b, {0.01, 5.0, DofMode::independence});
  CHECK(v.min_expected_count == doctest::Approx(2.5));
  CHECK_FALSE(v.guard_ok);
}

TEST_CASE("boundary p == alpha is not a rejection") {
  const auto a = two_halves(100);
  const auto v = is_independent(a, a);
  const auto at_boundary = is_independent(a, a, {v.p_value, 5.0, DofMode::independence});
  CHECK(at_boundary.independent);
}

TEST_CASE("independent uniform samples pass at the 1% level") {
  // Reference seed 2024; the pair is independent by construction.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<double> x(5000), y(5000);
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng);
  const auto v = is_independent(discretize(x, 100), discretize(y, 100));
  CHECK(v.independent);
  CHECK(v.dof == 49 * 49);
}

TEST_CASE("mutual information") {
  const auto a = two_halves(1000);
  CHECK(mutual_information(a, a) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_bins(rng, 200 + trial, 2 + trial % 6);
    CHECK(mutual_information(f, f) == doctest::Approx(entropy(f)).epsilon(1e-12));
    const auto g = random_bins(rng, 200 + trial, 3);
    CHECK(mutual_information(f, g) >= 0.0);
  }
}

TEST_CASE("pair tests") {
  const auto a = two_halves(100);
  const ChiSquarePairTest chi({0.01, 5.0, DofMode::independence});
  CHECK_FALSE(chi.test(a, a).independent);
  const MutualInformationPairTest loose(1.0, {});
  CHECK(loose.test(a, a).independent);  // ln 2 < 1
  const MutualInformationPairTest tight(0.5, {});
  CHECK_FALSE(tight.test(a, a).independent);
}

TEST_CASE("dof mode parsing") {
  CHECK(parse_dof_mode("independence") == DofMode::independence);
  CHECK(parse_dof_mode(to_string(DofMode::cells_minus_one)) == DofMode::cells_minus_one);
  CHECK_THROWS_AS(parse_dof_mode("other"), ArgumentError);
}
