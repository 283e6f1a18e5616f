#include <doctest.h>

#include <algorithm>
#include <random>

#include "pfa/errors.hpp"
#include "pfa/pfa.hpp"
#include "pfa/synth.hpp"
#include "support/oracles.hpp"

using namespace pfa;

namespace {

using Ids = std::vector<VariableId>;

PfaConfig config(std::size_t nu) {
  PfaConfig cfg;
  cfg.nu = nu;
  return cfg;
}

Dataset example(Scenario s, std::size_t n = 5000, std::uint64_t seed = 42) {
  SynthSpec spec;
  spec.scenario = s;
  spec.n_points = n;
  spec.seed = seed;
  return generate(spec);
}

std::vector<Ids> removal_sets(const PfaResult& r) {
  std::vector<Ids> out;
  for (const auto& rm : r.removed) out.push_back(rm.nodes);
  return out;
}

bool same_outcome(const PfaResult& a, const PfaResult& b) {
  return a.principal_subgraphs == b.principal_subgraphs &&
         removal_sets(a) == removal_sets(b) && a.constants == b.constants &&
         a.final_graph.graph == b.final_graph.graph;
}

}  // namespace

TEST_CASE("config validation") {
  PfaConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg.nu = 10;
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.ns = 1;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = cfg;
  bad.theta = -0.1;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  CHECK(parse_batching("random") == Batching::random);
  CHECK_THROWS_AS(parse_batching("shuffled"), ArgumentError);
}

TEST_CASE("example1 recovers the base variables") {
  const auto r = run_pfa(example(Scenario::example1), config(100));
  CHECK(r.principal_features == Ids{1, 2, 3});
  CHECK(r.principal_subgraphs == std::vector<Ids>{{1}, {2}, {3}});
  REQUIRE(r.removed.size() == 2);
  CHECK(r.removed[0].nodes == Ids{4});
  CHECK(r.removed[0].step == 1);
  CHECK(r.removed[0].pass == 1);
  CHECK(r.removed[1].nodes == Ids{5});
  CHECK(r.removed[1].step == 2);
  CHECK(r.constants.empty());
  CHECK(r.selected_features() == Ids{1, 2, 3});
  // Every test result lives in the cache; none was run twice.
  CHECK(r.tests_run() == r.cache->size());
}

TEST_CASE("constant features are set aside") {
  const Dataset ds({{3, 3, 3, 3, 3, 3}, {1, 2, 3, 4, 5, 6}, {7, 7, 7, 7, 7, 7}}, 0);
  const auto r = run_pfa(ds, config(2));
  CHECK(r.constants == Ids{1, 3});
  CHECK(r.principal_features == Ids{2});

  const Dataset flat({{1, 1, 1}, {2, 2, 2}}, 0);
  const auto none = run_pfa(flat, config(1));
  CHECK(none.constants == Ids{1, 2});
  CHECK(none.principal_features.empty());
  CHECK(none.passes == 0);
}

TEST_CASE("a single sublist equals direct dissection") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SynthSpec spec;
    spec.scenario = Scenario::dag;
    spec.n_points = 2000;
    spec.seed = seed;
    spec.dag.n_base = 4;
    spec.dag.n_derived = 6;
    const auto ds = generate(spec);
    auto cfg = config(100);
    cfg.ns = ds.n_features();
    const auto r = run_pfa(ds, cfg);

    const auto vars = discretize_all(ds, cfg.nu);
    VariableTester tester(vars, std::make_shared<ChiSquarePairTest>(cfg.test_options()));
    VerdictCache cache;
    const auto g = build_graph(tester, ds.feature_ids(), cache).graph;
    const auto d = dissect(g);
    std::vector<Ids> parts;
    for (const auto& sg : d.complete_subgraphs) parts.push_back(sg.nodes());
    CAPTURE(seed);
    CHECK(r.principal_subgraphs == parts);
    CHECK(r.principal_features == d.surviving_nodes());
    CHECK(oracle::check_dissection(g, d) == "");
  }
}

TEST_CASE("small sublists") {
  SynthSpec spec;
  spec.scenario = Scenario::dag;
  spec.n_points = 3000;
  spec.dag.n_base = 6;
  spec.dag.n_derived = 14;
  const auto data = generate_with_truth(spec);
  auto cfg = config(150);
  cfg.alpha = 1e-4;
  cfg.ns = 4;
  for (auto mode : {Batching::ordered, Batching::random}) {
    cfg.batching = mode;
    const auto r = run_pfa(data.dataset, cfg);
    CHECK(r.passes >= 2);
    const auto& last = r.final_graph.graph.nodes();
    CHECK(std::includes(last.begin(), last.end(), r.principal_features.begin(),
                        r.principal_features.end()));
    for (const auto& part : r.principal_subgraphs) {
      CHECK(is_complete(r.final_graph.graph.induced(part)));
    }
    CHECK(r.principal_features == data.base_ids);
    CHECK(r.tests_run() == r.cache->size());
  }
}

TEST_CASE("results do not depend on thread count") {
  SynthSpec spec;
  spec.scenario = Scenario::dag;
  spec.n_points = 2000;
  spec.dag.n_base = 8;
  spec.dag.n_derived = 24;
  const auto ds = generate(spec);
  auto cfg = config(100);
  cfg.ns = 6;
  cfg.batching = Batching::random;
  cfg.seed = 11;
  const auto one = run_pfa(ds, cfg);
  cfg.threads = 8;
  const auto eight = run_pfa(ds, cfg);
  CHECK(same_outcome(one, eight));
  CHECK(one.tests_run() == eight.tests_run());
}

TEST_CASE("example2 relevance filtering") {
  const auto ds = example(Scenario::example2);
  auto r = run_pfa(ds, config(100));
  CHECK(r.principal_features == Ids{2, 3});
  CHECK_FALSE(r.relevant_features.has_value());
  filter_relevant(r, ds);
  REQUIRE(r.relevant_features.has_value());
  CHECK(*r.relevant_features == Ids{2});
  CHECK(r.selected_features() == Ids{2});
  CHECK(analyze(ds, config(100)).selected_features() == Ids{2});

  auto no_outputs = run_pfa(example(Scenario::example1), config(100));
  CHECK_THROWS_AS(filter_relevant(no_outputs, example(Scenario::example1)), ArgumentError);
  CHECK_THROWS_AS(filter_relevant(r, example(Scenario::example2, 100)), ArgumentError);
}

TEST_CASE("a constant output makes nothing relevant") {
  auto rows = std::vector<std::vector<double>>{};
  const auto base = example(Scenario::example1, 1000);
  rows.emplace_back(1000, 1.0);
  for (VariableId id = 1; id <= 5; ++id) {
    const auto v = base.variable(id);
    rows.emplace_back(v.begin(), v.end());
  }
  const Dataset ds(std::move(rows), 1);
  const auto r = analyze(ds, config(50));
  CHECK(r.principal_features == Ids{2, 3, 4});
  CHECK(r.relevant_features == Ids{});
}

TEST_CASE("relevance keeps whole subgraphs") {
  // a = u + v and b = u form a complete pair; y only depends on v, so b on
  // its own is independent of y but rides along with a.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t n = 4000;
  std::vector<double> u(n), v(n), a(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = unif(rng);
    v[i] = unif(rng);
    a[i] = u[i] + v[i];
    y[i] = v[i] >= 0.5 ? 1.0 : 0.0;
  }
  const Dataset ds({y, a, u}, 1);
  auto r = analyze(ds, config(200));
  CHECK(r.principal_subgraphs == std::vector<Ids>{{2, 3}});
  const auto& vars = *r.variables;
  CHECK(is_independent(vars[2], vars[0]).independent);
  CHECK_FALSE(is_independent(vars[1], vars[0]).independent);
  CHECK(r.relevant_features == Ids{2, 3});
}

TEST_CASE("mutual information filter") {
  const auto ds = example(Scenario::example4, 10000);
  const auto r = analyze(ds, config(250));
  REQUIRE(r.relevant_features == Ids{2, 3});

  const auto all = filter_by_mi(r, ds, 0.0);
  CHECK(all.selected == Ids{2, 3});
  REQUIRE(all.scores.size() == 2);
  CHECK(all.scores[0].first == 2);
  CHECK(all.scores[0].second > 5 * all.scores[1].second);
  CHECK(filter_by_mi(r, ds, 0.05).selected == Ids{2});
  CHECK(filter_by_mi(r, ds, 10.0).selected.empty());
  CHECK(filter_by_mi(r, ds, all.scores[1].second).selected == Ids{2});  // strict

  // Raising theta only ever removes features.
  Ids previous = all.selected;
  for (double theta = 0.0; theta < 0.7; theta += 0.01) {
    const auto sel = filter_by_mi(r, ds, theta).selected;
    CHECK(std::includes(previous.begin(), previous.end(), sel.begin(), sel.end()));
    previous = sel;
  }

  auto cfg = config(250);
  cfg.theta = 0.05;
  const auto with_theta = analyze(ds, cfg);
  REQUIRE(with_theta.mi.has_value());
  CHECK(with_theta.selected_features() == Ids{2});

  const auto bare = run_pfa(ds, config(250));
  CHECK_THROWS_AS(filter_by_mi(bare, ds, 0.1), ArgumentError);
  CHECK_THROWS_AS(filter_by_mi(r, ds, -1.0), ArgumentError);
}

TEST_CASE("explain_feature") {
  const auto r = run_pfa(example(Scenario::example1), config(100));
  const auto before = r.cache->size();
  CHECK(explain_feature(r, 5) == Ids{1, 2});
  CHECK(explain_feature(r, 4) == Ids{1, 2, 3});
  CHECK(explain_feature(r, 1).empty());
  // All pairs involving 4 and 5 were tested during the run already.
  CHECK(r.cache->size() == before);
  CHECK(r.tests_run() == before);
  CHECK_THROWS_AS(explain_feature(r, 0), ArgumentError);
  CHECK_THROWS_AS(explain_feature(r, 6), ArgumentError);
  CHECK_THROWS_AS(explain_feature(PfaResult{}, 1), ArgumentError);
}

TEST_CASE("robust intersection") {
  const auto ds = example(Scenario::example1);
  auto cfg = config(100);
  cfg.seed = 10;
  const auto robust = robust_intersection(ds, cfg, 3, 0.9);
  CHECK(robust.intersection == Ids{1, 2, 3});
  CHECK(robust.seeds == std::vector<std::uint64_t>{10, 11, 12});
  REQUIRE(robust.runs.size() == 3);
  CHECK(robust.runs[1].config.seed == 11);

  const auto again = robust_intersection(ds, cfg, 3, 0.9);
  CHECK(again.intersection == robust.intersection);
  CHECK_THROWS_AS(robust_intersection(ds, cfg, 0, 0.9), ArgumentError);
  CHECK_THROWS_AS(robust_intersection(ds, cfg, 2, 0.0), ArgumentError);
  CHECK_THROWS_WITH_AS(robust_intersection(ds, cfg, 2, 1e-5),
                       doctest::Contains("run 1:"), Error);
}
