// trunclab — the radial truncation map, threshold schedules, and scaling.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/truncation.hpp"

#include <cmath>
#include <stdexcept>

namespace trunclab {

OvershootLaw OvershootLaw::exponential(double mean) {
  if (!(mean > 0.0))
    throw std::invalid_argument("OvershootLaw: exponential mean must be > 0");
  return {Kind::Exponential, mean};
}

OvershootLaw OvershootLaw::half_gaussian(double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("OvershootLaw: half-Gaussian sigma must be > 0");
  return {Kind::HalfGaussian, sigma};
}

TruncationScheme::TruncationScheme(double c, double beta, OvershootLaw o)
    : m_coeff(c), m_exponent(beta), overshoot(o) {
  if (!(c > 0.0))
    throw std::invalid_argument("TruncationScheme: m_coeff must be > 0");
  if (!(beta >= 0.0))
    throw std::invalid_argument("TruncationScheme: m_exponent must be >= 0");
}

double m_schedule_eval(const TruncationScheme& t, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("m_schedule_eval: n must be >= 1");
  return t.m_coeff * std::pow(static_cast<double>(n), t.m_exponent);
}

double sample_overshoot(const OvershootLaw& o, RandomStream& s) {
  switch (o.kind) {
    case OvershootLaw::Kind::Zero:
      return 0.0;
    case OvershootLaw::Kind::Exponential:
      return -o.param * std::log(s.next_uniform());
    case OvershootLaw::Kind::HalfGaussian:
      return std::fabs(o.param * sample_normal(s));
  }
  return 0.0;  // unreachable
}

SeqVec truncate(const SeqVec& h, double M, double l, NormKind kind) {
  if (!(M > 0.0)) throw std::invalid_argument("truncate: M must be > 0");
  if (!(l >= 0.0)) throw std::invalid_argument("truncate: l must be >= 0");
  const double n = norm(h, kind);
  if (n <= M) return h;
  return scale((M + l) / n, h);
}

double scaling_Bn(std::uint64_t n, double m_n, double p_exceed) {
  if (!(m_n > 0.0)) throw std::invalid_argument("scaling_Bn: M_n must be > 0");
  if (!(p_exceed >= 0.0) || !(p_exceed <= 1.0))
    throw std::invalid_argument("scaling_Bn: p_exceed must lie in [0, 1]");
  return std::sqrt(static_cast<double>(n) * m_n * m_n * p_exceed);
}

}  // namespace trunclab
