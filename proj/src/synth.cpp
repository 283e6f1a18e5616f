#include "pfa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "pfa/errors.hpp"

namespace pfa {

namespace {

using Row = std::vector<double>;

class Sampler {
 public:
  Sampler(const SynthSpec& spec)
      : rng_(spec.seed), uniform_(spec.low, spec.high), n_(spec.n_points) {}

  Row uniform_row() {
    Row row(n_);
    for (auto& v : row) v = uniform_(rng_);
    return row;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_;
  std::size_t n_;
};

template <typename Fn>
Row combine(const Row& a, const Row& b, Fn fn) {
  Row out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i], b[i]);
  return out;
}

Row product(const Row& a, const Row& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

SynthData example1(Sampler& s) {
  auto x1 = s.uniform_row();
  auto x2 = s.uniform_row();
  auto x3 = s.uniform_row();
  Row x4(x1.size());
  for (std::size_t i = 0; i < x4.size(); ++i) x4[i] = 2.0 * x1[i] * x2[i] * x3[i];
  auto x5 = product(x1, x2);
  std::vector<Row> rows{x1, x2, x3, std::move(x4), std::move(x5)};
  return {Dataset(std::move(rows), 0), {1, 2, 3}};
}

SynthData example2(Sampler& s) {
  auto x1 = s.uniform_row();
  auto x2 = s.uniform_row();
  auto x3 = product(x1, x2);
  Row sorted = x1;
  auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const double threshold = *mid;
  Row y(x1.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x1[i] >= threshold ? 1.0 : 0.0;
  std::vector<Row> rows{std::move(y), std::move(x1), std::move(x2), std::move(x3)};
  return {Dataset(std::move(rows), 1), {2, 3}};
}

SynthData example3(Sampler& s) {
  std::vector<Row> x(6);
  for (std::size_t i = 1; i <= 5; ++i) x[i] = s.uniform_row();
  auto x6 = product(x[1], x[2]);
  auto x7 = product(x[2], x[3]);
  auto x8 = product(x[3], x[4]);
  auto x9 = product(x[4], x[5]);
  // x2 and x4 are not measured.
  std::vector<Row> rows{x[1], x[3], x[5], std::move(x6), std::move(x7),
                        std::move(x8), std::move(x9)};
  return {Dataset(std::move(rows), 0), {1, 2, 3}};
}

SynthData example4(Sampler& s) {
  auto x1 = s.uniform_row();
  auto x2 = s.uniform_row();
  const double weight = std::pow(10.0, -0.5);
  Row y(x1.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = x1[i] + x2[i] * weight >= 4.0 ? 1.0 : 0.0;
  }
  std::vector<Row> rows{std::move(y), std::move(x1), std::move(x2)};
  return {Dataset(std::move(rows), 1), {2, 3}};
}

SynthData random_dag(Sampler& s, const DagOptions& opt) {
  if (opt.n_base < 2 && opt.n_derived > 0) {
    throw ArgumentError("dag scenario needs at least two base variables");
  }
  if (opt.n_base == 0) throw ArgumentError("dag scenario needs base variables");
  if (opt.max_parents < 2) throw ArgumentError("max_parents must be at least 2");

  std::vector<Row> rows;
  rows.reserve(opt.n_base + opt.n_derived);
  for (std::size_t i = 0; i < opt.n_base; ++i) rows.push_back(s.uniform_row());

  auto& rng = s.rng();
  const std::size_t max_parents = std::min(opt.max_parents, opt.n_base);
  std::vector<std::size_t> base_idx(opt.n_base);
  std::iota(base_idx.begin(), base_idx.end(), std::size_t{0});
  for (std::size_t d = 0; d < opt.n_derived; ++d) {
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(2, max_parents)(rng);
    const bool use_product = std::bernoulli_distribution(0.5)(rng);
    std::vector<std::size_t> parents;
    std::sample(base_idx.begin(), base_idx.end(), std::back_inserter(parents), k, rng);
    Row value = rows[parents[0]];
    for (std::size_t p = 1; p < parents.size(); ++p) {
      value = use_product ? product(value, rows[parents[p]])
                          : combine(value, rows[parents[p]],
                                    [](double a, double b) { return a + b; });
    }
    rows.push_back(std::move(value));
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opt.shuffle_rows) std::shuffle(order.begin(), order.end(), rng);

  std::vector<Row> emitted;
  std::vector<VariableId> base_ids;
  emitted.reserve(rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (order[r] < opt.n_base) base_ids.push_back(static_cast<VariableId>(r + 1));
    emitted.push_back(std::move(rows[order[r]]));
  }
  return {Dataset(std::move(emitted), 0), std::move(base_ids)};
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::example1: return "example1";
    case Scenario::example2: return "example2";
    case Scenario::example3: return "example3";
    case Scenario::example4: return "example4";
    case Scenario::dag: return "dag";
  }
  return "example1";
}

Scenario parse_scenario(std::string_view text) {
  for (auto s : {Scenario::example1, Scenario::example2, Scenario::example3,
                 Scenario::example4, Scenario::dag}) {
    if (text == to_string(s)) return s;
  }
  throw ArgumentError("unknown scenario '" + std::string(text) + "'");
}

SynthData generate_with_truth(const SynthSpec& spec) {
  if (spec.n_points < 1) throw ArgumentError("n_points must be at least 1");
  if (!(spec.low < spec.high)) throw ArgumentError("empty base range");
  Sampler sampler(spec);
  switch (spec.scenario) {
    case Scenario::example1: return example1(sampler);
    case Scenario::example2: return example2(sampler);
    case Scenario::example3: return example3(sampler);
    case Scenario::example4: return example4(sampler);
    case Scenario::dag: return random_dag(sampler, spec.dag);
  }
  throw ArgumentError("unknown scenario");
}

Dataset generate(const SynthSpec& spec) {
  return generate_with_truth(spec).dataset;
}

Graph random_graph(std::size_t n, double p_edge, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("random graph needs at least two nodes");
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) {
    throw ArgumentError("edge probability must lie in [0, 1]");
  }
  std::vector<VariableId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), VariableId{1});
  Graph g(nodes);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (VariableId a = 1; a <= n; ++a) {
    for (VariableId b = a + 1; b <= n; ++b) {
      if (coin(rng) < p_edge) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace pfa
