// trunclab — experiment orchestration.
//
// This module turns the building blocks (models, truncation schemes, the
// spectral estimator, the test kit) into reproducible experiments:
//
//   * run_clt_experiment — verifies the Gaussian limit of hard-truncated
//     row sums functional by functional: per (n, f) it collects replicate
//     samples of B_n^{-1} f(S_n), estimates their variance, and tests them
//     against the centered Gaussian with variance (2/(2-alpha)) int f^2
//     dsigma-hat. Centering is the exact symmetry zero: every implemented
//     model is symmetric and the truncation map is odd, so E f(S_n) = 0
//     identically and no Monte-Carlo centering noise is introduced.
//   * probe_small_ball / probe_uniform_moment — finite-n surrogates for the
//     two conditions that drive the Gaussian limit (liminf of the small-ball
//     probability, sup of the normalized first moment). These report trends
//     along the n-grid with confidence bands; they are surrogates, not
//     verdicts on the asymptotic conditions themselves.
//   * probe_example2_divergence — the bounded-series/Cauchy-spike mixture
//     whose truncated row sums admit no n^(1/p) normalization: tracks
//     P(n^(-1/p) ||S_n|| > 1) along the grid, which stays away from 0.
//   * soft_regime_check — under soft truncation the stable limit survives;
//     compares truncated samples against stable references by two-sample
//     KS after a median/IQR scale alignment.
//
// Reproducibility contract: a report is a pure function of (config, seed).
// Replicates fan out over split streams with one child per replicate index;
// results are written to per-replicate slots and reduced in ascending index
// order, so the thread count (TRUNCLAB_THREADS) can change the wall clock
// but never a single output byte.
//
// Stream layout under the root stream (seed):
//   child 0 — regime gate classification
//   child 1 — spectral pilot and sigma-hat estimation
//   child 2 — per-n tail estimation for B_n (child i for grid index i)
//   child 3 — replicate streams: child 3 -> grid index -> replicate + 1
//   child 4 — reference draws (soft check), same sub-layout as child 3
//   child 5 — probe replicates: child 5 -> probe id -> grid index -> rep + 1
//
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trunclab/banach.hpp"
#include "trunclab/models.hpp"
#include "trunclab/rng.hpp"
#include "trunclab/spectral.hpp"
#include "trunclab/stats.hpp"
#include "trunclab/truncation.hpp"

namespace trunclab {

/// Artifact version stamped into every report.
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Full experiment configuration; see docs/config.md for the file schema.
struct ExperimentConfig {
  TailModelSpec model;
  TruncationScheme scheme;
  std::vector<std::uint64_t> n_grid{1000, 3000, 10000, 30000};
  std::uint64_t reps = 2000;
  std::vector<Functional> functionals;
  std::uint64_t seed = 0;
  std::vector<double> epsilon_grid;  // small-ball levels; empty = pilot rule
  std::string out_dir = ".";
  std::string label;  // free-form run label echoed into the report

  /// Structural invariants: n_grid non-empty and strictly increasing,
  /// reps >= 200, functionals consistent with the model's norm. Throws
  /// std::invalid_argument with the offending field named.
  void validate() const;
};

/// One probe trace along the n-grid.
struct ProbeSeries {
  enum class Kind { SmallBall, UniformMoment, Divergence, RegimeTrace };

  Kind kind = Kind::UniformMoment;
  double param = 0.0;  // epsilon (SmallBall) or p (Divergence), else 0
  std::vector<std::uint64_t> n_grid;
  std::vector<double> values;
  std::vector<double> ci_halfwidths;  // 99% half-widths, >= 0

  static const char* kind_name(Kind k);
};

/// Per-(n, functional) verdict of a CLT run.
struct FunctionalCell {
  std::uint64_t n = 0;
  std::uint32_t functional_id = 0;       // index into config.functionals
  double target_variance = 0.0;          // (2/(2-alpha)) int f^2 dsigma-hat
  std::optional<double> analytic_variance;  // exact value when known
  double empirical_variance = 0.0;
  double variance_ci = 0.0;              // 99% half-width
  bool variance_consistent = false;      // |emp-target| <= 3 * variance_ci
  KsResult ks;                           // vs N(0, target_variance)
};

/// Per-(n, functional) verdict of a soft-regime check.
struct SoftCell {
  std::uint64_t n = 0;
  std::uint32_t functional_id = 0;
  KsResult ks;            // two-sample, after median/IQR alignment
  double scale_test = 0.0;  // IQR of the truncated sample
  double scale_ref = 0.0;   // IQR of the stable reference sample
};

/// One row of samples.csv.
struct SampleRow {
  std::uint64_t n = 0;
  std::uint32_t functional_id = 0;
  std::uint64_t replicate = 0;
  double value = 0.0;
};

/// Provenance of the spectral estimate used for target variances.
struct SpectralSummary {
  double threshold = 0.0;
  std::uint64_t n_exceed = 0;
  std::uint64_t pilot_draws = 0;
};

/// The full, serializable result of any experiment entry point. Sections
/// not produced by a given entry point stay empty. wall_seconds is runtime
/// telemetry: it is reported beside the run, never inside report.json,
/// which must be a pure function of (config, seed).
struct ExperimentReport {
  std::string kind;  // "clt", "regime", "spectral", "probe_*", "soft_check"
  ExperimentConfig config;
  std::vector<double> m_n;  // resolved threshold per grid n
  std::vector<double> b_n;  // resolved normalization per grid n
  std::vector<FunctionalCell> cells;
  std::vector<SoftCell> soft_cells;
  std::vector<ProbeSeries> probes;
  std::optional<RegimeReport> regime;
  std::optional<SpectralSummary> spectral;
  std::optional<SpectralEstimate> spectral_atoms;  // `spectral` runs only
  double cap_error_per_draw = 0.0;  // budget at delta = 1% of largest M_n
  bool regime_overridden = false;
  std::string centering = "symmetry-zero";
  std::string artifact_version = kArtifactVersion;
  std::vector<SampleRow> samples;  // one row per (n, functional, replicate)
  double wall_seconds = 0.0;       // telemetry; excluded from report.json
};

/// Hard-truncation CLT experiment; see the module preamble. Refuses a
/// configuration whose regime gate certifies Soft unless
/// `override_regime_gate` is set (the override is recorded in the report).
/// Throws std::runtime_error when a Monte-Carlo B_n cannot be pinned to a
/// relative 99% CI of 2% even after enlarging the tail sample, or when the
/// spectral pilot sees too few exceedances.
ExperimentReport run_clt_experiment(const ExperimentConfig& cfg,
                                    bool override_regime_gate = false);

/// P(B_n^(-1) ||S_n|| < eps) per n with binomial 99% CI. eps >= 0 required
/// (eps == 0 is the degenerate window: the strict inequality makes every
/// value 0); `samples_out`, when non-null, receives one row per replicate
/// (the normalized norms, functional_id 0).
ProbeSeries probe_small_ball(const ExperimentConfig& cfg, double eps,
                             std::vector<SampleRow>* samples_out = nullptr);

/// Empirical B_n^(-1) E||S_n|| per n with 99% CI.
ProbeSeries probe_uniform_moment(const ExperimentConfig& cfg,
                                 std::vector<SampleRow>* samples_out = nullptr);

/// P(n^(-1/p) ||S_n|| > 1) per n with binomial 99% CI, for the mixture
/// model only. Requires cfg.model.p == p and a threshold exponent inside
/// the window 0 < beta < 2/p - 1 (so that 1 << M_n << n^(2/p-1)); throws
/// std::invalid_argument otherwise.
ProbeSeries probe_example2_divergence(const ExperimentConfig& cfg, double p,
                                      std::vector<SampleRow>* samples_out =
                                          nullptr);

/// Soft-truncation stable-limit check; see the module preamble. Requires
/// the regime gate to certify Soft, else throws std::runtime_error. The
/// report's samples hold, per (n, functional), the truncated values at
/// replicate indices 0..reps-1 and the stable reference values at indices
/// reps..2*reps-1.
ExperimentReport soft_regime_check(const ExperimentConfig& cfg);

/// Regime trace over cfg.n_grid (>= 2 points), packaged as a report. The
/// Monte-Carlo tail sample is enlarged deterministically until the labels
/// certify or a retry cap is hit.
ExperimentReport run_regime_trace(const ExperimentConfig& cfg);

/// Spectral estimate at the pilot 0.99-quantile threshold, packaged as a
/// report with the full atom list.
ExperimentReport run_spectral_dump(const ExperimentConfig& cfg);

/// Probe entry point used by the CLI: runs the requested probe (resolving
/// the small-ball epsilon rule when cfg.epsilon_grid is empty: epsilon =
/// the empirical 0.3-quantile of B_n^(-1) ||S_n|| at the smallest n) and
/// packages the series plus samples into a report.
ExperimentReport run_probe(const ExperimentConfig& cfg,
                           ProbeSeries::Kind kind);

/// Worker count for replicate fan-out: the TRUNCLAB_THREADS environment
/// variable when set to a positive integer, otherwise 1. Thread count
/// never influences report contents, only wall clock.
int thread_count();

}  // namespace trunclab
