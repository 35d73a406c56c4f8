// trunclab — experiment orchestration implementation.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace trunclab {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

// Stream-layout child ids under the root stream (see the header preamble).
constexpr std::uint64_t kRegimeChild = 0;
constexpr std::uint64_t kSpectralChild = 1;
constexpr std::uint64_t kBnChild = 2;
constexpr std::uint64_t kReplicateChild = 3;
constexpr std::uint64_t kReferenceChild = 4;
constexpr std::uint64_t kProbeChild = 5;

// Probe ids under the probe child.
constexpr std::uint64_t kProbeSmallBall = 0;
constexpr std::uint64_t kProbeMoment = 1;
constexpr std::uint64_t kProbeDivergence = 2;

// Pilot sizes for the spectral estimate. Sized so that a 0.99-quantile
// threshold yields ~2e3 conditioning events — enough for the quadratic
// integral, cheap next to the replicate loops.
constexpr std::uint64_t kPilotDraws = 100000;
constexpr std::uint64_t kSpectralDraws = 200000;

// Tail-sample schedule for Monte-Carlo normalization and regime work.
constexpr std::uint64_t kTailReps0 = 200000;

std::chrono::steady_clock::time_point now() {
  return std::chrono::steady_clock::now();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(now() - t0).count();
}

// Runs body(replicate, workspace) for every replicate in [0, reps), fanned
// out over thread_count() threads in contiguous blocks. The body must only
// write to replicate-indexed slots; reductions happen after the join, in
// ascending replicate order, so results never depend on the fan-out.
template <class Body>
void parallel_replicates(std::uint64_t reps, Body&& body) {
  const int workers = thread_count();
  if (workers <= 1 || reps < 2) {
    detail::RowWorkspace ws;
    for (std::uint64_t r = 0; r < reps; ++r) body(r, ws);
    return;
  }
  const auto t = static_cast<std::uint64_t>(workers);
  const std::uint64_t chunk = (reps + t - 1) / t;
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  for (std::uint64_t w = 0; w < t; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(reps, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      detail::RowWorkspace ws;
      try {
        for (std::uint64_t r = lo; r < hi; ++r) body(r, ws);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double norm_dense(const std::vector<double>& acc, std::uint32_t cap,
                  NormKind kind) {
  if (kind == NormKind::Sup) {
    double mx = 0.0;
    for (std::uint32_t k = 1; k <= cap; ++k)
      mx = std::max(mx, std::fabs(acc[k]));
    return mx;
  }
  double s = 0.0;
  for (std::uint32_t k = 1; k <= cap; ++k) s += acc[k] * acc[k];
  return std::sqrt(s);
}

double eval_dense(const Functional& f, const std::vector<double>& acc) {
  double s = 0.0;
  for (const auto& [idx, w] : f.weights()) s += w * acc[idx];
  return s;
}

// Resolved per-n normalization: thresholds and B_n.
struct Resolved {
  std::vector<double> m_n;
  std::vector<double> b_n;
};

// Pins B_n = sqrt(n M_n^2 P(||H|| > M_n)) for every grid point. Exact for
// the scalar model; for Monte-Carlo tails the sample is enlarged
// deterministically (first by a cushion jump sized from the pilot estimate,
// then by doubling) until the 99% CI of B_n is within 2% relative — i.e.
// the CI of p within 4% — or the retry cap trips.
Resolved resolve_normalization(const ExperimentConfig& cfg,
                               const RandomStream& bn_root) {
  Resolved out;
  out.m_n.reserve(cfg.n_grid.size());
  out.b_n.reserve(cfg.n_grid.size());
  constexpr double kRelTol = 0.04;  // on p; halves to 2% on B_n
  constexpr int kMaxAttempts = 6;
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::uint64_t n = cfg.n_grid[i];
    const double m = m_schedule_eval(cfg.scheme, n);
    const RandomStream point = bn_root.split(i);
    std::uint64_t reps = kTailReps0;
    ExceedEstimate est{};
    bool pinned = false;
    for (int a = 0; a < kMaxAttempts; ++a) {
      est = exceed_prob(cfg.model, m, point.split(a), reps);
      if (est.analytic ||
          (est.estimate > 0.0 && est.ci_halfwidth <= kRelTol * est.estimate)) {
        pinned = true;
        break;
      }
      if (a == 0 && est.estimate > 0.0) {
        // One informed jump: hits needed ~ (z/tol)^2, so draws ~ that / p.
        const double target =
            1.3 * (kZ99 / kRelTol) * (kZ99 / kRelTol) / est.estimate;
        reps = std::max<std::uint64_t>(
            2 * reps, static_cast<std::uint64_t>(std::ceil(target / 100.0)) *
                          100);
      } else {
        reps *= 2;
      }
    }
    if (!pinned)
      throw std::runtime_error(
          "normalization: could not pin B_n at n = " + std::to_string(n) +
          " to a 2% relative CI; the exceedance probability is too small "
          "for Monte-Carlo tails (is the schedule soft?)");
    out.m_n.push_back(m);
    out.b_n.push_back(scaling_Bn(n, m, est.estimate));
  }
  return out;
}

// Regime gate: classify on {front, back} of the grid (or {n, 10n} for a
// single-point grid), enlarging the Monte-Carlo tail sample on demand when
// certification fails.
RegimeReport gate_regime(const ExperimentConfig& cfg,
                         const RandomStream& regime_root) {
  std::vector<std::uint64_t> grid;
  if (cfg.n_grid.size() >= 2)
    grid = {cfg.n_grid.front(), cfg.n_grid.back()};
  else
    grid = {cfg.n_grid.front(), cfg.n_grid.front() * 10};
  constexpr int kMaxAttempts = 4;
  std::uint64_t reps = kTailReps0;
  for (int a = 0;; ++a) {
    try {
      return classify_regime(cfg.model, cfg.scheme, grid,
                             regime_root.split(a), reps);
    } catch (const std::runtime_error&) {
      if (a + 1 >= kMaxAttempts) throw;
      reps *= 2;
    }
  }
}

// Adaptive classification over an arbitrary grid (the `regime` entry point).
RegimeReport classify_adaptive(const ExperimentConfig& cfg,
                               const std::vector<std::uint64_t>& grid,
                               const RandomStream& regime_root) {
  constexpr int kMaxAttempts = 4;
  std::uint64_t reps = kTailReps0;
  for (int a = 0;; ++a) {
    try {
      return classify_regime(cfg.model, cfg.scheme, grid,
                             regime_root.split(a), reps);
    } catch (const std::runtime_error&) {
      if (a + 1 >= kMaxAttempts) throw;
      reps *= 2;
    }
  }
}

// Normalized norms ||S_n|| / denom for one grid point; denom <= 0 selects
// B_n. Slot-per-replicate, reduced in order by the callers.
std::vector<double> probe_norms(const ExperimentConfig& cfg,
                                const Resolved& res,
                                const RandomStream& probe_root,
                                std::uint64_t probe_id, std::size_t grid_i,
                                double denom_override) {
  const std::uint64_t n = cfg.n_grid[grid_i];
  const double m = res.m_n[grid_i];
  const double denom =
      denom_override > 0.0 ? denom_override : res.b_n[grid_i];
  const RandomStream point = probe_root.split(probe_id).split(grid_i);
  std::vector<double> vals(cfg.reps);
  parallel_replicates(cfg.reps, [&](std::uint64_t r,
                                    detail::RowWorkspace& ws) {
    detail::accumulate_row(cfg.model, m, cfg.scheme.overshoot, n,
                           point.split(r + 1), ws);
    vals[r] = norm_dense(ws.acc, cfg.model.cap, cfg.model.norm_kind) / denom;
    std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
  });
  return vals;
}

void append_samples(std::vector<SampleRow>* out, std::uint64_t n,
                    std::uint32_t functional_id,
                    const std::vector<double>& vals,
                    std::uint64_t replicate_base = 0) {
  if (out == nullptr) return;
  for (std::size_t r = 0; r < vals.size(); ++r)
    out->push_back(
        SampleRow{n, functional_id, replicate_base + r, vals[r]});
}

double binomial_ci(double p_hat, std::uint64_t reps) {
  return kZ99 * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) /
                          static_cast<double>(reps));
}

ProbeSeries small_ball_core(const ExperimentConfig& cfg, const Resolved& res,
                            const RandomStream& probe_root, double eps,
                            std::vector<SampleRow>* samples_out) {
  ProbeSeries series;
  series.kind = ProbeSeries::Kind::SmallBall;
  series.param = eps;
  series.n_grid = cfg.n_grid;
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::vector<double> vals =
        probe_norms(cfg, res, probe_root, kProbeSmallBall, i, 0.0);
    std::uint64_t hits = 0;
    for (double v : vals) hits += (v < eps) ? 1 : 0;
    const double p_hat =
        static_cast<double>(hits) / static_cast<double>(cfg.reps);
    series.values.push_back(p_hat);
    series.ci_halfwidths.push_back(binomial_ci(p_hat, cfg.reps));
    append_samples(samples_out, cfg.n_grid[i], 0, vals);
  }
  return series;
}

ProbeSeries moment_core(const ExperimentConfig& cfg, const Resolved& res,
                        const RandomStream& probe_root,
                        std::vector<SampleRow>* samples_out) {
  ProbeSeries series;
  series.kind = ProbeSeries::Kind::UniformMoment;
  series.n_grid = cfg.n_grid;
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::vector<double> vals =
        probe_norms(cfg, res, probe_root, kProbeMoment, i, 0.0);
    const double mean = empirical_moment(vals, 1.0);  // norms are >= 0
    const double m2 = empirical_moment(vals, 2.0);
    series.values.push_back(mean);
    series.ci_halfwidths.push_back(
        kZ99 * std::sqrt(std::max(0.0, m2 - mean * mean) /
                         static_cast<double>(cfg.reps)));
    append_samples(samples_out, cfg.n_grid[i], 0, vals);
  }
  return series;
}

ProbeSeries divergence_core(const ExperimentConfig& cfg, const Resolved& res,
                            const RandomStream& probe_root, double p,
                            std::vector<SampleRow>* samples_out) {
  ProbeSeries series;
  series.kind = ProbeSeries::Kind::Divergence;
  series.param = p;
  series.n_grid = cfg.n_grid;
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const double denom =
        std::pow(static_cast<double>(cfg.n_grid[i]), 1.0 / p);
    const std::vector<double> vals =
        probe_norms(cfg, res, probe_root, kProbeDivergence, i, denom);
    std::uint64_t hits = 0;
    for (double v : vals) hits += (v > 1.0) ? 1 : 0;
    const double p_hat =
        static_cast<double>(hits) / static_cast<double>(cfg.reps);
    series.values.push_back(p_hat);
    series.ci_halfwidths.push_back(binomial_ci(p_hat, cfg.reps));
    append_samples(samples_out, cfg.n_grid[i], 0, vals);
  }
  return series;
}

// Thresholds only; the divergence probe's own normalization is n^(1/p).
Resolved thresholds_only(const ExperimentConfig& cfg) {
  Resolved res;
  for (std::uint64_t n : cfg.n_grid) {
    res.m_n.push_back(m_schedule_eval(cfg.scheme, n));
    res.b_n.push_back(1.0);
  }
  return res;
}

void validate_divergence_window(const ExperimentConfig& cfg, double p) {
  if (cfg.model.variant != TailModelSpec::Variant::RademacherCauchyMix)
    throw std::invalid_argument(
        "probe_example2_divergence: the divergence probe is defined for the "
        "bounded-series/Cauchy-spike mixture only");
  if (cfg.model.p != p)
    throw std::invalid_argument(
        "probe_example2_divergence: p disagrees with the model's p");
  const double beta = cfg.scheme.m_exponent;
  if (!(beta > 0.0) || !(beta < 2.0 / p - 1.0))
    throw std::invalid_argument(
        "probe_example2_divergence: the threshold exponent must satisfy "
        "0 < beta < 2/p - 1 (so that M_n grows but stays well below "
        "n^(2/p-1))");
}

}  // namespace

int thread_count() {
  const char* env = std::getenv("TRUNCLAB_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 64));
}

const char* ProbeSeries::kind_name(Kind k) {
  switch (k) {
    case Kind::SmallBall: return "small_ball";
    case Kind::UniformMoment: return "uniform_moment";
    case Kind::Divergence: return "divergence";
    case Kind::RegimeTrace: return "regime_trace";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  model.validate();
  if (n_grid.empty())
    throw std::invalid_argument("config: n_grid must be non-empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1)
      throw std::invalid_argument("config: n_grid entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument(
          "config: n_grid must be strictly increasing");
  }
  if (reps < 200)
    throw std::invalid_argument(
        "config: reps must be >= 200 (variance and KS estimates below that "
        "are too noisy to report)");
  for (const auto& f : functionals) {
    if (f.weights().empty())
      throw std::invalid_argument("config: functionals must be non-zero");
    if (f.norm_kind() != model.norm_kind)
      throw std::invalid_argument(
          "config: functional norm kind disagrees with the model space");
    for (const auto& [idx, w] : f.weights())
      if (idx > model.cap)
        throw std::invalid_argument(
            "config: functional references coordinates beyond the model "
            "cap");
  }
  for (double e : epsilon_grid)
    if (!(e >= 0.0))
      throw std::invalid_argument(
          "config: epsilon_grid entries must be >= 0");
}

ExperimentReport run_clt_experiment(const ExperimentConfig& cfg,
                                    bool override_regime_gate) {
  const auto t0 = now();
  cfg.validate();
  if (cfg.functionals.empty())
    throw std::invalid_argument(
        "run_clt_experiment: at least one functional is required");

  const RandomStream root(cfg.seed);
  ExperimentReport rep;
  rep.kind = "clt";
  rep.config = cfg;

  // Regime gate: this entry point is for hard truncation. A certified-Soft
  // schedule is refused unless explicitly overridden (and the override is
  // put on the record).
  rep.regime = gate_regime(cfg, root.split(kRegimeChild));
  if (rep.regime->label == RegimeReport::Label::Soft) {
    if (!override_regime_gate)
      throw std::runtime_error(
          "run_clt_experiment: the schedule classifies as soft-truncated; "
          "use soft_regime_check, or override the gate to proceed anyway");
    rep.regime_overridden = true;
  }

  // Spectral measure at the pilot threshold; drives every target variance.
  const RandomStream spectral_root = root.split(kSpectralChild);
  const double t_pilot =
      pilot_norm_quantile(cfg.model, 0.99, kPilotDraws, spectral_root.split(0));
  const SpectralEstimate sigma_hat = estimate_spectral(
      cfg.model, t_pilot, kSpectralDraws, spectral_root.split(1));
  sigma_hat.validate();
  rep.spectral =
      SpectralSummary{t_pilot, sigma_hat.n_exceed, kPilotDraws};

  const Resolved res = resolve_normalization(cfg, root.split(kBnChild));
  rep.m_n = res.m_n;
  rep.b_n = res.b_n;
  rep.cap_error_per_draw =
      cap_error_budget(cfg.model, 0.01 * res.m_n.back());

  const double alpha = cfg.model.tail_index();
  const RandomStream rep_root = root.split(kReplicateChild);
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::uint64_t n = cfg.n_grid[i];
    const RandomStream point = rep_root.split(i);
    std::vector<std::vector<double>> vals(
        cfg.functionals.size(), std::vector<double>(cfg.reps));
    parallel_replicates(cfg.reps, [&](std::uint64_t r,
                                      detail::RowWorkspace& ws) {
      detail::accumulate_row(cfg.model, res.m_n[i], cfg.scheme.overshoot, n,
                             point.split(r + 1), ws);
      for (std::size_t f = 0; f < cfg.functionals.size(); ++f)
        vals[f][r] = eval_dense(cfg.functionals[f], ws.acc) / res.b_n[i];
      std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
    });
    for (std::size_t f = 0; f < cfg.functionals.size(); ++f) {
      const GaussLimitSpec target =
          limit_variance(cfg.functionals[f], sigma_hat, alpha);
      if (!(target.variance > 0.0))
        throw std::runtime_error(
            "run_clt_experiment: the estimated limit variance vanishes for "
            "a configured functional; it is orthogonal to every observed "
            "spectral atom");
      FunctionalCell cell;
      cell.n = n;
      cell.functional_id = static_cast<std::uint32_t>(f);
      cell.target_variance = target.variance;
      if (cfg.model.variant == TailModelSpec::Variant::ScalarPareto) {
        // The scalar spectral measure is exactly (delta_{e1}+delta_{-e1})/2,
        // so the limit variance is available in closed form.
        const double f_e1 =
            apply_functional(cfg.functionals[f],
                             SeqVec::basis(1, 1.0, cfg.model.cap));
        cell.analytic_variance =
            2.0 / (2.0 - alpha) * f_e1 * f_e1;
      }
      // Centering is the exact symmetry zero, so the second moment is the
      // variance; its CI comes from the fourth moment.
      const double m2 = empirical_moment(vals[f], 2.0);
      const double m4 = empirical_moment(vals[f], 4.0);
      cell.empirical_variance = m2;
      cell.variance_ci =
          kZ99 * std::sqrt(std::max(0.0, m4 - m2 * m2) /
                           static_cast<double>(cfg.reps));
      cell.variance_consistent =
          std::fabs(m2 - cell.target_variance) <= 3.0 * cell.variance_ci;
      const double v = cell.target_variance;
      cell.ks = ks_one_sample(
          vals[f], [v](double x) { return gaussian_cdf(x, v); });
      rep.cells.push_back(cell);
      append_samples(&rep.samples, n, static_cast<std::uint32_t>(f),
                     vals[f]);
    }
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

ProbeSeries probe_small_ball(const ExperimentConfig& cfg, double eps,
                             std::vector<SampleRow>* samples_out) {
  cfg.validate();
  if (!(eps >= 0.0))
    throw std::invalid_argument("probe_small_ball: eps must be >= 0");
  const RandomStream root(cfg.seed);
  const Resolved res = resolve_normalization(cfg, root.split(kBnChild));
  return small_ball_core(cfg, res, root.split(kProbeChild), eps,
                         samples_out);
}

ProbeSeries probe_uniform_moment(const ExperimentConfig& cfg,
                                 std::vector<SampleRow>* samples_out) {
  cfg.validate();
  const RandomStream root(cfg.seed);
  const Resolved res = resolve_normalization(cfg, root.split(kBnChild));
  return moment_core(cfg, res, root.split(kProbeChild), samples_out);
}

ProbeSeries probe_example2_divergence(const ExperimentConfig& cfg, double p,
                                      std::vector<SampleRow>* samples_out) {
  cfg.validate();
  validate_divergence_window(cfg, p);
  const RandomStream root(cfg.seed);
  // No B_n here: the probe's whole point is that the n^(1/p) normalization
  // fails. Thresholds are still needed for the truncated rows.
  return divergence_core(cfg, thresholds_only(cfg), root.split(kProbeChild),
                         p, samples_out);
}

ExperimentReport soft_regime_check(const ExperimentConfig& cfg) {
  const auto t0 = now();
  cfg.validate();
  if (cfg.functionals.empty())
    throw std::invalid_argument(
        "soft_regime_check: at least one functional is required");

  const RandomStream root(cfg.seed);
  ExperimentReport rep;
  rep.kind = "soft_check";
  rep.config = cfg;

  rep.regime = gate_regime(cfg, root.split(kRegimeChild));
  if (rep.regime->label != RegimeReport::Label::Soft)
    throw std::runtime_error(
        "soft_regime_check: the schedule does not certify as soft-truncated "
        "(nP(||H|| > M_n) must vanish along the grid)");

  const double alpha = cfg.model.tail_index();
  const bool scalar =
      cfg.model.variant == TailModelSpec::Variant::ScalarPareto;
  const RandomStream rep_root = root.split(kReplicateChild);
  const RandomStream ref_root = root.split(kReferenceChild);
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::uint64_t n = cfg.n_grid[i];
    const double m = m_schedule_eval(cfg.scheme, n);
    // Stable normalization b_n = (C n)^(1/alpha); a_n = 0 by symmetry.
    const double b_n = stable_normalization(cfg.model, n).second;
    rep.m_n.push_back(m);
    rep.b_n.push_back(b_n);
    const RandomStream point = rep_root.split(i);
    const RandomStream ref_point = ref_root.split(i);
    const std::size_t nf = cfg.functionals.size();
    std::vector<double> f_e1(nf);
    for (std::size_t f = 0; f < nf; ++f)
      f_e1[f] = apply_functional(cfg.functionals[f],
                                 SeqVec::basis(1, 1.0, cfg.model.cap));
    std::vector<std::vector<double>> test_vals(nf,
                                               std::vector<double>(cfg.reps));
    std::vector<std::vector<double>> ref_vals(nf,
                                              std::vector<double>(cfg.reps));
    parallel_replicates(cfg.reps, [&](std::uint64_t r,
                                      detail::RowWorkspace& ws) {
      const RandomStream rs = point.split(r + 1);
      detail::accumulate_row(cfg.model, m, cfg.scheme.overshoot, n, rs, ws);
      for (std::size_t f = 0; f < nf; ++f)
        test_vals[f][r] = eval_dense(cfg.functionals[f], ws.acc) / b_n;
      std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
      if (scalar) {
        // Direct draws from the scalar stable reference law.
        RandomStream rr = ref_point.split(r + 1);
        const double t = sample_sas(StableParams{alpha}, rr);
        for (std::size_t f = 0; f < nf; ++f) ref_vals[f][r] = f_e1[f] * t;
      } else {
        // Untruncated row on the *same* stream as the truncated one: when
        // the truncation never binds, the two samples coincide path-wise.
        detail::accumulate_row(cfg.model,
                               std::numeric_limits<double>::infinity(),
                               OvershootLaw::zero(), n, rs, ws);
        for (std::size_t f = 0; f < nf; ++f)
          ref_vals[f][r] = eval_dense(cfg.functionals[f], ws.acc) / b_n;
        std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
      }
    });
    for (std::size_t f = 0; f < nf; ++f) {
      // Align location and scale by median/IQR before comparing shapes:
      // truncation clips the extreme tail, which perturbs moment-based
      // scalings but barely moves the quartiles in the soft regime.
      auto standardize = [](const std::vector<double>& v, double* iqr_out) {
        const double med = quantile(v, 0.5);
        double iqr = quantile(v, 0.75) - quantile(v, 0.25);
        *iqr_out = iqr;
        if (!(iqr > 0.0)) iqr = 1.0;  // degenerate sample; compare raw
        std::vector<double> out(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
          out[j] = (v[j] - med) / iqr;
        return out;
      };
      SoftCell cell;
      cell.n = n;
      cell.functional_id = static_cast<std::uint32_t>(f);
      const std::vector<double> a = standardize(test_vals[f],
                                                &cell.scale_test);
      const std::vector<double> b = standardize(ref_vals[f],
                                                &cell.scale_ref);
      cell.ks = ks_two_sample(a, b);
      rep.soft_cells.push_back(cell);
      append_samples(&rep.samples, n, static_cast<std::uint32_t>(f),
                     test_vals[f]);
      append_samples(&rep.samples, n, static_cast<std::uint32_t>(f),
                     ref_vals[f], cfg.reps);
    }
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport run_regime_trace(const ExperimentConfig& cfg) {
  const auto t0 = now();
  cfg.validate();
  if (cfg.n_grid.size() < 2)
    throw std::invalid_argument(
        "run_regime_trace: the grid needs at least two points");
  const RandomStream root(cfg.seed);
  ExperimentReport rep;
  rep.kind = "regime";
  rep.config = cfg;
  rep.regime = classify_adaptive(cfg, cfg.n_grid, root.split(kRegimeChild));
  for (std::uint64_t n : cfg.n_grid)
    rep.m_n.push_back(m_schedule_eval(cfg.scheme, n));
  ProbeSeries trace;
  trace.kind = ProbeSeries::Kind::RegimeTrace;
  trace.n_grid = cfg.n_grid;
  trace.values = rep.regime->np_exceed;
  trace.ci_halfwidths = rep.regime->np_ci;
  rep.probes.push_back(trace);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport run_spectral_dump(const ExperimentConfig& cfg) {
  const auto t0 = now();
  cfg.validate();
  const RandomStream root(cfg.seed);
  ExperimentReport rep;
  rep.kind = "spectral";
  rep.config = cfg;
  const RandomStream spectral_root = root.split(kSpectralChild);
  const double t_pilot =
      pilot_norm_quantile(cfg.model, 0.99, kPilotDraws, spectral_root.split(0));
  SpectralEstimate sigma_hat = estimate_spectral(
      cfg.model, t_pilot, kSpectralDraws, spectral_root.split(1));
  sigma_hat.validate();
  rep.spectral = SpectralSummary{t_pilot, sigma_hat.n_exceed, kPilotDraws};
  rep.spectral_atoms = std::move(sigma_hat);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport run_probe(const ExperimentConfig& cfg,
                           ProbeSeries::Kind kind) {
  const auto t0 = now();
  cfg.validate();
  ExperimentReport rep;
  rep.config = cfg;
  rep.kind = std::string("probe_") + ProbeSeries::kind_name(kind);
  const RandomStream root(cfg.seed);
  const RandomStream probe_root = root.split(kProbeChild);
  switch (kind) {
    case ProbeSeries::Kind::SmallBall: {
      const Resolved res = resolve_normalization(cfg, root.split(kBnChild));
      rep.m_n = res.m_n;
      rep.b_n = res.b_n;
      std::vector<double> eps_list = cfg.epsilon_grid;
      if (eps_list.empty()) {
        // Default rule: epsilon = the empirical 0.3-quantile of the
        // normalized norm at the smallest grid point, so the series starts
        // near 0.3 by construction and the informative content is whether
        // it holds up across the rest of the grid.
        const std::vector<double> pilot =
            probe_norms(cfg, res, probe_root, kProbeSmallBall, 0, 0.0);
        eps_list.push_back(quantile(pilot, 0.3));
      }
      for (std::size_t e = 0; e < eps_list.size(); ++e) {
        // The normalized norms do not depend on epsilon, so per-replicate
        // rows are recorded once (functional_id 0), with the first series.
        rep.probes.push_back(small_ball_core(
            cfg, res, probe_root, eps_list[e],
            e == 0 ? &rep.samples : nullptr));
      }
      break;
    }
    case ProbeSeries::Kind::UniformMoment: {
      const Resolved res = resolve_normalization(cfg, root.split(kBnChild));
      rep.m_n = res.m_n;
      rep.b_n = res.b_n;
      rep.probes.push_back(moment_core(cfg, res, probe_root, &rep.samples));
      break;
    }
    case ProbeSeries::Kind::Divergence: {
      validate_divergence_window(cfg, cfg.model.p);
      const Resolved res = thresholds_only(cfg);
      rep.m_n = res.m_n;  // b_n deliberately absent for the divergence probe
      rep.probes.push_back(
          divergence_core(cfg, res, probe_root, cfg.model.p, &rep.samples));
      break;
    }
    case ProbeSeries::Kind::RegimeTrace:
      throw std::invalid_argument(
          "run_probe: use run_regime_trace for regime traces");
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

}  // namespace trunclab
