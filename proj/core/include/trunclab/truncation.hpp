// trunclab — the radial truncation map, threshold schedules, and scaling.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.
//
// The model of interest replaces a heavy-tailed vector H by
//
//   X = H                         if ||H|| <= M,
//   X = (M + L) * H / ||H||       if ||H|| >  M,
//
// where M is the truncation threshold and L >= 0 is an independent
// "overshoot" with finite second moment, modeling mass that decays quickly
// beyond the threshold. The map is radial: it preserves direction exactly and
// the output norm is ||H|| on the small-norm branch and M + L on the other.
// It is odd (truncate(-h) = -truncate(h)), so symmetric input laws stay
// symmetric and row sums need no centering.
//
// Thresholds follow power schedules M_n = c * n^beta. Whether n draws at
// threshold M_n behave Gaussianly is governed by n * P(||H|| > M_n): if it
// tends to 0 the truncation is "soft" (heavy-tail behavior survives); if it
// tends to infinity it is "hard" (a Gaussian limit emerges under the scaling
// B_n = sqrt(n * M_n^2 * P(||H|| > M_n))).

#pragma once

#include <cstdint>

#include "trunclab/banach.hpp"
#include "trunclab/rng.hpp"

namespace trunclab {

/// Law of the nonnegative overshoot L. Every variant has a finite second
/// moment by construction.
struct OvershootLaw {
  enum class Kind { Zero, Exponential, HalfGaussian };

  Kind kind = Kind::Zero;
  double param = 0.0;  // Exponential: mean; HalfGaussian: sigma

  static OvershootLaw zero() { return {Kind::Zero, 0.0}; }
  static OvershootLaw exponential(double mean);
  static OvershootLaw half_gaussian(double sigma);
};

/// Power threshold schedule M_n = m_coeff * n^m_exponent plus the overshoot
/// law used at the threshold. M_n is non-decreasing in n and tends to
/// infinity iff m_exponent > 0.
struct TruncationScheme {
  double m_coeff = 1.0;     // c > 0
  double m_exponent = 0.5;  // beta >= 0
  OvershootLaw overshoot;

  TruncationScheme() = default;
  TruncationScheme(double c, double beta, OvershootLaw o);
};

/// M_n = c * n^beta.
double m_schedule_eval(const TruncationScheme& t, std::uint64_t n);

/// One draw of the overshoot L (>= 0).
double sample_overshoot(const OvershootLaw& o, RandomStream& s);

/// The radial truncation map. Returns h unchanged when ||h|| <= M (regardless
/// of l), else (M + l) * h / ||h||. The zero vector passes through.
SeqVec truncate(const SeqVec& h, double M, double l, NormKind kind);

/// B_n = sqrt(n * M_n^2 * p_exceed), the hard-regime normalization. Returns 0
/// when p_exceed == 0 (degenerate; callers must reject such schedules).
double scaling_Bn(std::uint64_t n, double m_n, double p_exceed);

}  // namespace trunclab
