// trunclab — empirical spectral measure implementation.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "trunclab/stats.hpp"

namespace trunclab {

void SpectralEstimate::validate() const {
  double sum = 0.0;
  for (const auto& [atom, w] : atoms) {
    if (!(w > 0.0))
      throw std::logic_error("SpectralEstimate: non-positive atom weight");
    if (std::fabs(norm(atom, norm_kind) - 1.0) > 1e-10)
      throw std::logic_error("SpectralEstimate: atom is not on the sphere");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::logic_error("SpectralEstimate: weights do not sum to 1");
}

SpectralEstimate estimate_spectral(const TailModelSpec& model, double t,
                                   std::uint64_t reps,
                                   const RandomStream& s) {
  if (!(t > 0.0))
    throw std::invalid_argument("estimate_spectral: threshold must be > 0");
  model.validate();
  SpectralEstimate sp;
  sp.threshold = t;
  sp.norm_kind = model.norm_kind;
  detail::RowWorkspace ws;
  std::vector<SeqVec> directions;
  for (std::uint64_t j = 1; j <= reps; ++j) {
    const RandomStream draw = s.split(j);
    // Cheap norm pass first; the vector is only materialized on exceedance.
    // Both passes read disjoint parts of the draw's child streams, so the
    // replay is exact.
    const double nrm = detail::sample_H_norm(model, draw, ws);
    if (nrm > t) {
      detail::materialize_draw(model, draw, ws);
      directions.push_back(direction(
          detail::dense_to_seqvec(ws.acc, model.cap), model.norm_kind));
    }
  }
  if (directions.size() < 100)
    throw std::runtime_error(
        "estimate_spectral: fewer than 100 exceedances observed; raise reps "
        "or lower the threshold");
  sp.n_exceed = directions.size();
  const double w = 1.0 / static_cast<double>(sp.n_exceed);
  sp.atoms.reserve(directions.size());
  for (auto& d : directions) sp.atoms.emplace_back(std::move(d), w);
  return sp;
}

GaussLimitSpec limit_variance(const Functional& f, const SpectralEstimate& sp,
                              double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("limit_variance: alpha must lie in (0, 2)");
  double integral = 0.0;
  for (const auto& [atom, w] : sp.atoms) {
    const double fx = apply_functional(f, atom);
    integral += w * fx * fx;
  }
  GaussLimitSpec g{f, 2.0 / (2.0 - alpha) * integral, alpha};
  return g;
}

double pilot_norm_quantile(const TailModelSpec& model, double q,
                           std::uint64_t draws, const RandomStream& s) {
  if (draws == 0)
    throw std::invalid_argument("pilot_norm_quantile: draws >= 1");
  model.validate();
  detail::RowWorkspace ws;
  std::vector<double> norms(draws);
  for (std::uint64_t j = 0; j < draws; ++j)
    norms[j] = detail::sample_H_norm(model, s.split(j + 1), ws);
  return quantile(std::move(norms), q);
}

}  // namespace trunclab
