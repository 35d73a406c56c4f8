// trunclab — splittable random streams and scalar samplers.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trunclab {

RandomStream::RandomStream(std::uint64_t seed,
                           const std::vector<std::uint64_t>& path)
    : RandomStream(seed) {
  for (std::uint64_t id : path) *this = split(id);
}

int sample_rademacher(RandomStream& s) {
  return (s.next_u64() >> 63) ? 1 : -1;
}

double sample_sas(const StableParams& p, RandomStream& s) {
  if (!(p.alpha > 0.0) || !(p.alpha <= 2.0))
    throw std::invalid_argument("sample_sas: alpha must lie in (0, 2]");
  const double theta = std::numbers::pi * (s.next_uniform() - 0.5);
  if (p.alpha == 1.0) return std::tan(theta);  // analytic Cauchy limit
  const double w = -std::log(s.next_uniform());
  const double a = p.alpha;
  return std::sin(a * theta) * std::pow(std::cos(theta), -1.0 / a) *
         std::pow(std::cos((1.0 - a) * theta) / w, (1.0 - a) / a);
}

double sample_cauchy(RandomStream& s) {
  return std::tan(std::numbers::pi * (s.next_uniform() - 0.5));
}

double sample_pareto(double alpha, double x_m, RandomStream& s) {
  if (!(alpha > 0.0)) throw std::invalid_argument("sample_pareto: alpha <= 0");
  if (!(x_m > 0.0)) throw std::invalid_argument("sample_pareto: x_m <= 0");
  // Inversion: u in (0,1) open, so the draw is finite and > x_m.
  return x_m * std::pow(s.next_uniform(), -1.0 / alpha);
}

double sample_normal(RandomStream& s) {
  const double u1 = s.next_uniform();
  const double u2 = s.next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace trunclab
