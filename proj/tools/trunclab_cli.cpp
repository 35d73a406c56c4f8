// trunclab — command-line driver.
//
// Subcommands:
//   run        hard-truncation CLT experiment over the configured grid
//   regime     soft/hard classification trace along the grid
//   spectral   empirical spectral measure at the pilot threshold
//   probe      small-ball | moment | divergence series
//   soft-check two-sample comparison against the stable reference law
//
// Every invocation loads a JSON config (--config), optionally overrides the
// seed, replicate count and output directory, runs one experiment, and
// writes report.json / samples.csv / run_meta.json into the output
// directory. Exit status is 0 on success, 1 on any error.
//
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "trunclab/config_io.hpp"
#include "trunclab/experiment.hpp"

namespace {

void print_summary(const trunclab::ExperimentReport& rep,
                   const std::string& out_dir) {
  std::cout << "trunclab " << rep.kind << " (label '" << rep.config.label
            << "', seed " << rep.config.seed << ")\n";
  if (rep.regime.has_value())
    std::cout << "  regime: "
              << trunclab::RegimeReport::label_name(rep.regime->label)
              << (rep.regime_overridden ? " [gate overridden]" : "") << "\n";
  if (rep.spectral.has_value())
    std::cout << "  spectral: threshold " << rep.spectral->threshold
              << ", exceedances " << rep.spectral->n_exceed << "\n";
  for (const auto& c : rep.cells)
    std::cout << "  n=" << c.n << " functional=" << c.functional_id
              << " variance=" << c.empirical_variance << " (target "
              << c.target_variance << ", ci " << c.variance_ci
              << (c.variance_consistent ? "" : ", INCONSISTENT")
              << ") ks_p=" << c.ks.p_value << "\n";
  for (const auto& c : rep.soft_cells)
    std::cout << "  n=" << c.n << " functional=" << c.functional_id
              << " two-sample ks_p=" << c.ks.p_value << " (D="
              << c.ks.statistic << ")\n";
  for (const auto& p : rep.probes) {
    std::cout << "  probe " << trunclab::ProbeSeries::kind_name(p.kind);
    if (p.kind == trunclab::ProbeSeries::Kind::SmallBall)
      std::cout << " (eps=" << p.param << ")";
    if (p.kind == trunclab::ProbeSeries::Kind::Divergence)
      std::cout << " (p=" << p.param << ")";
    std::cout << ":";
    for (std::size_t i = 0; i < p.values.size(); ++i)
      std::cout << " " << p.values[i] << "±" << p.ci_halfwidths[i];
    std::cout << "\n";
  }
  std::cout << "  wall-clock: " << rep.wall_seconds << " s (threads "
            << trunclab::thread_count() << ")\n";
  std::cout << "  wrote " << out_dir << "/report.json\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "trunclab: Monte-Carlo laboratory for truncated heavy-tailed row sums "
      "in sequence spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed_override = 0;
  std::uint64_t reps_override = 0;
  std::string out_override;
  bool quiet = false;

  CLI::Option* config_opt =
      app.add_option("--config", config_path, "Path to the JSON config")
          ->required();
  CLI::Option* seed_opt =
      app.add_option("--seed", seed_override, "Override the config seed");
  CLI::Option* out_opt = app.add_option("--out", out_override,
                                        "Override the output directory");
  CLI::Option* reps_opt = app.add_option(
      "--reps", reps_override, "Override the replicate count per grid point");
  app.add_flag("--quiet", quiet, "Suppress the stdout summary");
  (void)config_opt;

  CLI::App* sub_run =
      app.add_subcommand("run", "Hard-truncation CLT experiment");
  CLI::App* sub_regime =
      app.add_subcommand("regime", "Regime classification trace");
  CLI::App* sub_spectral =
      app.add_subcommand("spectral", "Empirical spectral measure dump");
  CLI::App* sub_probe = app.add_subcommand(
      "probe", "Hypothesis probes: small-ball, moment, divergence");
  CLI::App* sub_soft =
      app.add_subcommand("soft-check", "Soft-truncation stable-limit check");
  std::string probe_which;
  sub_probe
      ->add_option("which", probe_which,
                   "One of: small-ball, moment, divergence")
      ->required()
      ->check(CLI::IsMember({"small-ball", "moment", "divergence"}));
  for (CLI::App* sub :
       {sub_run, sub_regime, sub_spectral, sub_probe, sub_soft})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    trunclab::ExperimentConfig cfg =
        trunclab::load_config_file(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed_override;
    if (reps_opt->count() > 0) cfg.reps = reps_override;
    if (out_opt->count() > 0) cfg.out_dir = out_override;

    trunclab::ExperimentReport rep;
    if (sub_run->parsed()) {
      rep = trunclab::run_clt_experiment(cfg);
    } else if (sub_regime->parsed()) {
      rep = trunclab::run_regime_trace(cfg);
    } else if (sub_spectral->parsed()) {
      rep = trunclab::run_spectral_dump(cfg);
    } else if (sub_probe->parsed()) {
      trunclab::ProbeSeries::Kind kind =
          trunclab::ProbeSeries::Kind::UniformMoment;
      if (probe_which == "small-ball")
        kind = trunclab::ProbeSeries::Kind::SmallBall;
      else if (probe_which == "divergence")
        kind = trunclab::ProbeSeries::Kind::Divergence;
      rep = trunclab::run_probe(cfg, kind);
    } else {
      rep = trunclab::soft_regime_check(cfg);
    }

    trunclab::write_report(rep, cfg.out_dir);
    if (!quiet) print_summary(rep, cfg.out_dir);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
