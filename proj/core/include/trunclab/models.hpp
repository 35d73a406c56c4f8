// trunclab — heavy-tailed input models, row sums, and tail/regime estimation.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.
//
// Three input laws for the heavy-tailed vector H are implemented:
//
//  * ScalarPareto — a symmetrized Pareto scalar sitting on coordinate 1:
//    H = eps * X * e_1 with P(X > x) = (x_m/x)^alpha and eps a fair sign.
//    Every tail quantity is exact, which makes this the desk-scale oracle.
//
//  * StableSeries — the c0/l2 coefficient series H = sum_k a_k T_k e_k with
//    i.i.d. symmetric alpha-stable T_k and a_k = c * k^(-r). Summability of
//    a_k^(alpha/2) (i.e. r*alpha/2 > 1) is required for the series to live in
//    c0 with a regularly-varying norm tail; construction fails loudly
//    otherwise. The norm tail satisfies x^alpha * P(||H|| > x) -> const, but
//    that constant has no closed form and is only ever estimated.
//
//  * RademacherCauchyMix — a bounded symmetric Rademacher series
//    X = sum_j a_j eps_j e_j with a_j = K * (log(j v 2))^((1-p)/2), mixed
//    with a one-dimensional Cauchy spike: H = X if U = 0, H = x * S if U = 1,
//    with U Bernoulli(1/2), S standard Cauchy, x a fixed direction. The
//    series part is bounded (||X||_sup = a_1 exactly), the spike gives the
//    mixture a 1-stable norm tail, and n^(-1/p) * (row sums) refuses to
//    converge — the counterexample probed by the divergence experiment.
//
// Infinite sequences are represented up to a coordinate cap; for the stable
// series the neglected mass is bounded via the stable tail inequality
// P(|T| > x) <= C' x^(-alpha) and reported as a budget (cap_error_budget).
//
// Stream discipline (the reproducibility contract): a row sum over n draws
// takes a stream s and gives draw j the child s.split(j), j = 1..n. Within a
// draw, coordinate k consumes child k, the overshoot (drawn only when the
// threshold is exceeded) consumes child 0, and auxiliary scalars (the mixture
// branch/spike, the scalar magnitude and sign) consume child cap+1. Because
// the overshoot child is touched only on exceedance, a truncated row with a
// threshold above every realized norm reproduces the untruncated row
// draw-for-draw.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trunclab/banach.hpp"
#include "trunclab/rng.hpp"
#include "trunclab/truncation.hpp"

namespace trunclab {

/// Description of the law of H.
struct TailModelSpec {
  enum class Variant { ScalarPareto, StableSeries, RademacherCauchyMix };

  Variant variant = Variant::ScalarPareto;

  // ScalarPareto / StableSeries tail index; the mixture's is fixed at 1.
  double alpha = 1.0;
  // ScalarPareto scale.
  double x_m = 1.0;
  // StableSeries coefficient rule a_k = coeff_c * k^(-coeff_r).
  double coeff_c = 1.0;
  double coeff_r = 2.0;
  // RademacherCauchyMix: exponent p in (1,2), envelope constant, direction x.
  double p = 1.5;
  double k_const = 1.0;
  SeqVec direction_x;

  std::uint32_t cap = 1;
  NormKind norm_kind = NormKind::Sup;

  /// Norm-tail constant C in P(||H|| > x) ~ C x^(-tail_index). Exact
  /// (x_m^alpha) for ScalarPareto; for other models it must be estimated
  /// (fit_tail_constant) or supplied, and stays unset until then.
  std::optional<double> tail_constant;

  /// Precomputed coefficient envelope a_1..a_cap (series and mixture).
  std::vector<double> coeffs;

  static TailModelSpec scalar_pareto(double alpha, double x_m);
  static TailModelSpec stable_series(double alpha, double coeff_c,
                                     double coeff_r, std::uint32_t cap,
                                     NormKind kind);
  /// direction defaults to e_1 when `direction` is empty.
  static TailModelSpec rademacher_cauchy_mix(double p, double k_const,
                                             std::uint32_t cap,
                                             SeqVec direction = SeqVec());

  /// The index of regular variation of ||H||: alpha for the scalar and the
  /// series, 1 for the mixture (the Cauchy spike dominates the tail).
  double tail_index() const;

  /// Throws std::invalid_argument with a field-specific message if any
  /// parameter violates the model's standing assumptions.
  void validate() const;
};

/// a_k = c * k^(-r), k = 1..K, after checking the stable-series summability
/// condition sum_k a_k^(alpha/2) < inf, i.e. r * alpha / 2 > 1.
std::vector<double> coefficients_example1(double c, double r, double alpha,
                                          std::uint32_t K);

/// a_j = k_const * (log(max(j,2)))^((1-p)/2), j = 1..cap. Note a_1 = a_2.
std::vector<double> coefficients_example2(double p, double k_const,
                                          std::uint32_t cap);

/// One draw of H. The stream is split internally per the discipline above;
/// the parent stream is never advanced.
SeqVec sample_H(const TailModelSpec& model, const RandomStream& s);

/// A realized row sum with its normalization bookkeeping.
struct RowSumSample {
  SeqVec s_n;         // sum of n truncated draws
  std::uint64_t n = 0;
  double m_n = 0.0;       // threshold used
  double b_n_scale = 0.0; // B_n used for normalization downstream
};

/// Point estimate of P(||H|| > M) with a 99% confidence half-width.
struct ExceedEstimate {
  double estimate = 0.0;
  double ci_halfwidth = 0.0;
  bool analytic = false;  // exact closed form (ci == 0) vs Monte Carlo
};

/// P(||H|| > M): exact for ScalarPareto, otherwise Monte Carlo over `reps`
/// total draws split into 100 equal batches (each on its own child stream);
/// the 99% CI comes from the batch-mean spread. Throws std::invalid_argument
/// for reps < 1000 (too few batches for a meaningful CI).
ExceedEstimate exceed_prob(const TailModelSpec& model, double M,
                           const RandomStream& s, std::uint64_t reps);

/// Sum of n i.i.d. truncated draws at threshold M_n = scheme(n). When
/// `b_n` is provided it is recorded as-is (orchestrators compute B_n once per
/// n); otherwise B_n is derived here — exactly for ScalarPareto, else through
/// the Monte-Carlo tail estimate with `tail_reps` draws on child 0 of `s`
/// (whose error propagates as documented on exceed_prob).
RowSumSample sample_truncated_row(const TailModelSpec& model,
                                  const TruncationScheme& scheme,
                                  std::uint64_t n, const RandomStream& s,
                                  std::optional<double> b_n = std::nullopt,
                                  std::uint64_t tail_reps = 200000);

/// Sum of n i.i.d. untruncated draws under the same stream discipline.
SeqVec sample_row_untruncated(const TailModelSpec& model, std::uint64_t n,
                              const RandomStream& s);

/// Soft/hard regime classification along an n-grid.
struct RegimeReport {
  enum class Label { Soft, Hard, Indeterminate };
  enum class Method { Analytic, MonteCarlo };

  std::vector<std::uint64_t> n_grid;
  std::vector<double> np_exceed;  // n * P(||H|| > M_n)
  std::vector<double> np_ci;      // 99% half-widths (0 when analytic)
  Label label = Label::Indeterminate;
  Method method = Method::Analytic;
  std::uint64_t mc_reps = 0;

  static const char* label_name(Label l);
};

/// Computes n * P(||H|| > M_n) along the grid and labels the schedule:
/// Hard if the trace increases and its last value exceeds 10x its first,
/// Soft if it decreases and the last value is below 0.1x the first,
/// Indeterminate otherwise (e.g. the alpha*beta = 1 boundary). For Monte-
/// Carlo tails a Hard/Soft label must also be certified once CI half-widths
/// are accounted for; if the point estimates say Hard/Soft but the CIs cannot
/// order the trace, throws std::runtime_error (raise tail_reps).
RegimeReport classify_regime(const TailModelSpec& model,
                             const TruncationScheme& scheme,
                             const std::vector<std::uint64_t>& n_grid,
                             const RandomStream& s,
                             std::uint64_t tail_reps = 200000);

/// Domain-of-attraction normalization: a_n = 0 (all implemented models are
/// symmetric) and b_n = (C n)^(1/tail_index) with C the model's tail
/// constant. Throws std::invalid_argument when the constant is unavailable.
std::pair<double, double> stable_normalization(const TailModelSpec& model,
                                               std::uint64_t n);

/// Flatness fit of the norm-tail constant: draws `draws` norms, evaluates
/// x^tail_index * P-hat(||H|| > x) at the empirical 0.99/0.995/0.999
/// quantiles, and returns their geometric mean together with the relative
/// spread (max/min - 1) as a flatness diagnostic.
struct TailFit {
  double c_hat = 0.0;
  double spread = 0.0;
  double q99 = 0.0;
  double q999 = 0.0;
  std::uint64_t draws = 0;
};
TailFit fit_tail_constant(const TailModelSpec& model, const RandomStream& s,
                          std::uint64_t draws);

/// Conservative bound on the probability that coordinates beyond the cap
/// would have moved the norm by more than `delta`: for the stable series,
/// sum_{k>cap} P(a_k |T_k| > delta) bounded via P(|T| > x) <= C' x^(-alpha)
/// with C' = twice the numerically-known tail constant of the stable law.
/// Exactly 0 for ScalarPareto (cap 1 is the support) and for the mixture
/// (its norm is attained at coordinate 1 or the spike direction).
double cap_error_budget(const TailModelSpec& model, double delta);

namespace detail {

/// Reusable buffers for hot row-sum loops.
struct RowWorkspace {
  std::vector<double> u1, u2, t;  // per-coordinate uniform and variate lanes
  std::vector<double> acc;        // dense accumulator, slot k for e_k
};

/// Norm of one H draw without materializing the vector (tail Monte Carlo).
double sample_H_norm(const TailModelSpec& model, const RandomStream& s,
                     RowWorkspace& ws);

/// Materializes the draw whose stream is `s` into ws.acc (zeroed first).
/// Uses the same child-stream convention as sample_H_norm, so calling both
/// with the same stream yields the norm and the vector of one draw: the
/// norm pass never consumes from the children the materialization reads.
void materialize_draw(const TailModelSpec& model, const RandomStream& s,
                      RowWorkspace& ws);

/// Dense row-sum core: adds n truncated (or untruncated, if M infinite)
/// draws into ws.acc and returns nothing; used by the public row samplers
/// and the experiment orchestrator.
void accumulate_row(const TailModelSpec& model, double M,
                    const OvershootLaw& overshoot, std::uint64_t n,
                    const RandomStream& s, RowWorkspace& ws);

SeqVec dense_to_seqvec(const std::vector<double>& acc, std::uint32_t cap);

}  // namespace detail

}  // namespace trunclab
