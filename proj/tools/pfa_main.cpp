// Command-line front end: `pfa run`, `pfa robust`, `pfa synth`.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pfa/dataset.hpp"
#include "pfa/errors.hpp"
#include "pfa/pfa.hpp"
#include "pfa/report.hpp"
#include "pfa/synth.hpp"

namespace {

struct CommonFlags {
  std::string input;
  std::size_t n_outputs = 1;
  std::size_t nu = 0;
  std::size_t ns = 50;
  double alpha = 0.01;
  std::optional<double> theta;
  std::string batching = "ordered";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> tie_seed;
  double min_expected = 5.0;
  std::string dof_mode = "independence";
  std::string out = "pfa";
  unsigned threads = 1;
  bool timings = false;

  pfa::PfaConfig config() const {
    pfa::PfaConfig cfg;
    cfg.nu = nu;
    cfg.alpha = alpha;
    cfg.ns = ns;
    cfg.batching = pfa::parse_batching(batching);
    cfg.seed = seed;
    cfg.tie_seed = tie_seed;
    cfg.min_expected = min_expected;
    cfg.dof_mode = pfa::parse_dof_mode(dof_mode);
    cfg.theta = theta;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "CSV file: rows are variables, columns are data points")
      ->required();
  cmd->add_option("--n-outputs", f.n_outputs, "Number of leading output rows")
      ->capture_default_str();
  cmd->add_option("--nu", f.nu, "Minimum number of points per bin")->required();
  cmd->add_option("--ns", f.ns, "Maximal number of nodes per sublist")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Significance level")->capture_default_str();
  cmd->add_option("--theta", f.theta, "Mutual-information threshold (nats)");
  cmd->add_option("--batching", f.batching, "Sublist construction")
      ->check(CLI::IsMember({"ordered", "random"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for random batching and subsampling")
      ->capture_default_str();
  cmd->add_option("--tie-seed", f.tie_seed, "Permute node order when choosing among minimum cuts");
  cmd->add_option("--min-expected", f.min_expected, "Expected-count guard threshold")
      ->capture_default_str();
  cmd->add_option("--dof-mode", f.dof_mode, "Degrees of freedom convention")
      ->check(CLI::IsMember({"independence", "cells_minus_one"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output prefix")->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads")->capture_default_str();
  cmd->add_flag("--timings", f.timings, "Add wall-clock timings to the report");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw pfa::IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw pfa::IoError("write failed for '" + path.string() + "'");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_run(const CommonFlags& f) {
  const auto cfg = f.config();
  std::map<std::string, double> timings;
  auto t0 = std::chrono::steady_clock::now();
  const auto ds = pfa::load_csv(f.input, f.n_outputs);
  timings["load"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto result = pfa::run_pfa(ds, cfg);
  timings["pfa"] = seconds_since(t0);
  if (ds.n_outputs() > 0) {
    t0 = std::chrono::steady_clock::now();
    pfa::filter_relevant(result, ds);
    if (cfg.theta) result.mi = pfa::filter_by_mi(result, ds, *cfg.theta);
    timings["filter"] = seconds_since(t0);
  } else if (cfg.theta) {
    std::cerr << "warning: --theta ignored, dataset has no output rows\n";
  }

  const auto report = pfa::run_report(result, ds, f.timings ? timings : decltype(timings){});
  write_file(f.out + ".features.txt", pfa::features_text(result.selected_features()));
  write_file(f.out + ".report.json", report.dump(2) + "\n");
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

int cmd_robust(const CommonFlags& f, std::size_t runs, double fraction) {
  const auto cfg = f.config();
  const auto ds = pfa::load_csv(f.input, f.n_outputs);
  const auto robust = pfa::robust_intersection(ds, cfg, runs, fraction);

  std::vector<std::string> files;
  std::vector<std::string> names;
  std::vector<std::string> contents;
  for (std::size_t k = 0; k < robust.runs.size(); ++k) {
    files.push_back(f.out + ".run" + std::to_string(k + 1) + ".report.json");
    names.push_back(std::filesystem::path(files.back()).filename().string());
    const auto sample = pfa::subsample(ds, fraction, robust.seeds[k]);
    contents.push_back(pfa::run_report(robust.runs[k], sample).dump(2) + "\n");
  }
  const auto report = pfa::robust_report(robust, cfg, runs, fraction, names);
  for (std::size_t k = 0; k < files.size(); ++k) write_file(files[k], contents[k]);
  write_file(f.out + ".features.txt", pfa::features_text(robust.intersection));
  write_file(f.out + ".report.json", report.dump(2) + "\n");
  return 0;
}

struct SynthFlags {
  std::string scenario;
  std::size_t n = 5000;
  std::uint64_t seed = 42;
  std::string out;
  std::size_t n_base = 10;
  std::size_t n_derived = 10;
  std::size_t max_parents = 2;
};

int cmd_synth(const SynthFlags& f) {
  pfa::SynthSpec spec;
  spec.scenario = pfa::parse_scenario(f.scenario);
  spec.n_points = f.n;
  spec.seed = f.seed;
  spec.dag.n_base = f.n_base;
  spec.dag.n_derived = f.n_derived;
  spec.dag.max_parents = f.max_parents;
  const auto ds = pfa::generate(spec);
  pfa::save_csv(ds, f.out);
  std::cerr << "wrote " << f.out << ": " << ds.n_variables() << " rows ("
            << ds.n_outputs() << " output), " << ds.n_points() << " points\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal feature analysis: select the independent argument features of a dataset"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Run the analysis on a CSV dataset");
  add_common(run, run_flags);

  CommonFlags robust_flags;
  std::size_t runs = 5;
  double fraction = 0.95;
  auto* robust = app.add_subcommand("robust", "Intersect the selection over resampled runs");
  add_common(robust, robust_flags);
  robust->add_option("--runs", runs, "Number of resampled runs")->capture_default_str();
  robust->add_option("--fraction", fraction, "Fraction of data points per run")
      ->capture_default_str();

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Write a synthetic scenario as CSV");
  synth->add_option("--scenario", synth_flags.scenario,
                    "example1 | example2 | example3 | example4 | dag")
      ->required();
  synth->add_option("--n", synth_flags.n, "Number of data points")->capture_default_str();
  synth->add_option("--seed", synth_flags.seed, "Random seed")->capture_default_str();
  synth->add_option("--out", synth_flags.out, "Output CSV path")->required();
  synth->add_option("--n-base", synth_flags.n_base, "dag: base variables")->capture_default_str();
  synth->add_option("--n-derived", synth_flags.n_derived, "dag: derived variables")
      ->capture_default_str();
  synth->add_option("--max-parents", synth_flags.max_parents, "dag: parents per derived variable")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*robust) return cmd_robust(robust_flags, runs, fraction);
    if (*synth) return cmd_synth(synth_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
