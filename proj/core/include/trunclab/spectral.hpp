// trunclab — empirical spectral measure on the unit sphere and the limit
// variance functional it induces.
//
// For a regularly varying H the conditional law of H/||H|| given ||H|| > t
// converges weakly (t -> inf) to a probability measure sigma on the unit
// sphere. We estimate sigma by its raw empirical counterpart: one atom per
// observed exceedance direction, each carrying weight 1/n_exceed. No sphere
// binning is applied — the downstream consumer is the quadratic integral
// int f^2 dsigma, which needs none, and any binning would smuggle in an
// arbitrary partition of the sphere.
//
// Every finite-t estimate is biased relative to the t -> inf limit by an
// amount the theory does not quantify; the estimate therefore records the
// threshold and the number of conditioning events instead of hiding them,
// and users are expected to check threshold stability (recompute at 2t).
//
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trunclab/banach.hpp"
#include "trunclab/models.hpp"
#include "trunclab/rng.hpp"

namespace trunclab {

/// Empirical spectral measure: atoms on the unit sphere with weights.
struct SpectralEstimate {
  std::vector<std::pair<SeqVec, double>> atoms;  // (unit direction, weight)
  double threshold = 0.0;     // conditioning level t
  std::uint64_t n_exceed = 0; // number of conditioning events
  NormKind norm_kind = NormKind::Sup;

  /// Enforces the defining invariants: all weights positive and summing to
  /// 1 within 1e-12, every atom of norm 1 within 1e-10. Throws
  /// std::logic_error on violation.
  void validate() const;
};

/// A Gaussian limit description: the test functional together with the
/// variance (2/(2-alpha)) * int f^2 dsigma of its limiting law.
struct GaussLimitSpec {
  Functional functional;
  double variance = 0.0;
  double alpha = 0.0;
};

/// Draws `reps` copies of H and returns the empirical spectral measure at
/// threshold t: the directions H/||H|| of the draws with ||H|| > t, each
/// with weight 1/n_exceed. Aim reps high enough for >= 1e3 exceedances;
/// throws std::runtime_error if fewer than 100 arrive (the estimate would
/// be statistically meaningless) and std::invalid_argument for t <= 0.
SpectralEstimate estimate_spectral(const TailModelSpec& model, double t,
                                   std::uint64_t reps, const RandomStream& s);

/// Variance of the Gaussian limit for functional f under the (estimated)
/// spectral measure: (2/(2-alpha)) * sum_atoms weight * f(atom)^2.
/// Requires 0 < alpha < 2.
GaussLimitSpec limit_variance(const Functional& f, const SpectralEstimate& sp,
                              double alpha);

/// Empirical q-quantile of ||H|| from `draws` pilot draws. This is how a
/// conditioning threshold is chosen in practice (t = the 0.99-quantile by
/// default elsewhere); exposed so callers can report the pilot choice.
double pilot_norm_quantile(const TailModelSpec& model, double q,
                           std::uint64_t draws, const RandomStream& s);

}  // namespace trunclab
