// trunclab — heavy-tailed input models and row sums.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trunclab {

namespace {

constexpr std::uint64_t kOvershootChild = 0;  // within a draw's stream

// Auxiliary-scalar child id within a draw's stream (mixture branch/spike,
// scalar magnitude+sign): one past the coordinate children 1..cap.
std::uint64_t aux_child(const TailModelSpec& m) {
  return static_cast<std::uint64_t>(m.cap) + 1;
}

// Numerically known tail constant of the standard symmetric stable law:
// lim x^alpha P(|T| > x) = (1-alpha) / (Gamma(2-alpha) cos(pi alpha / 2)),
// with the alpha -> 1 limit 2/pi. Used only for the conservative cap budget.
double sas_tail_constant(double alpha) {
  if (alpha == 1.0) return 2.0 / std::numbers::pi;
  return (1.0 - alpha) /
         (std::tgamma(2.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0));
}

}  // namespace

TailModelSpec TailModelSpec::scalar_pareto(double alpha, double x_m) {
  TailModelSpec m;
  m.variant = Variant::ScalarPareto;
  m.alpha = alpha;
  m.x_m = x_m;
  m.cap = 1;
  m.norm_kind = NormKind::Sup;
  m.validate();
  m.tail_constant = std::pow(x_m, alpha);  // exact: P(|X| > x) = (x_m/x)^alpha
  return m;
}

TailModelSpec TailModelSpec::stable_series(double alpha, double coeff_c,
                                           double coeff_r, std::uint32_t cap,
                                           NormKind kind) {
  TailModelSpec m;
  m.variant = Variant::StableSeries;
  m.alpha = alpha;
  m.coeff_c = coeff_c;
  m.coeff_r = coeff_r;
  m.cap = cap;
  m.norm_kind = kind;
  m.validate();
  m.coeffs = coefficients_example1(coeff_c, coeff_r, alpha, cap);
  return m;
}

TailModelSpec TailModelSpec::rademacher_cauchy_mix(double p, double k_const,
                                                   std::uint32_t cap,
                                                   SeqVec direction) {
  TailModelSpec m;
  m.variant = Variant::RademacherCauchyMix;
  m.p = p;
  m.k_const = k_const;
  m.cap = cap;
  m.norm_kind = NormKind::Sup;
  m.direction_x =
      direction.empty() ? SeqVec::basis(1, 1.0, cap) : std::move(direction);
  m.validate();
  m.coeffs = coefficients_example2(p, k_const, cap);
  return m;
}

double TailModelSpec::tail_index() const {
  return variant == Variant::RademacherCauchyMix ? 1.0 : alpha;
}

void TailModelSpec::validate() const {
  switch (variant) {
    case Variant::ScalarPareto:
      if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument(
            "scalar_pareto: alpha must lie in (0, 2) for a heavy tail");
      if (!(x_m > 0.0))
        throw std::invalid_argument("scalar_pareto: x_m must be > 0");
      break;
    case Variant::StableSeries:
      if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument(
            "stable_series: alpha must lie in (0, 2)");
      if (!(coeff_c > 0.0))
        throw std::invalid_argument("stable_series: coeff_c must be > 0");
      if (cap < 1)
        throw std::invalid_argument("stable_series: cap must be >= 1");
      if (!(coeff_r * alpha / 2.0 > 1.0))
        throw std::invalid_argument(
            "stable_series: coefficients must satisfy "
            "sum_k a_k^(alpha/2) < infinity, which for a_k = c*k^(-r) "
            "requires r*alpha/2 > 1");
      break;
    case Variant::RademacherCauchyMix:
      if (!(p > 1.0) || !(p < 2.0))
        throw std::invalid_argument(
            "rademacher_cauchy_mix: p must lie in (1, 2)");
      if (!(k_const > 0.0))
        throw std::invalid_argument(
            "rademacher_cauchy_mix: k_const must be > 0");
      if (cap < 1)
        throw std::invalid_argument("rademacher_cauchy_mix: cap must be >= 1");
      if (direction_x.empty())
        throw std::invalid_argument(
            "rademacher_cauchy_mix: direction must be nonzero");
      for (const auto& e : direction_x.entries())
        if (e.first > cap)
          throw std::invalid_argument(
              "rademacher_cauchy_mix: direction support exceeds the "
              "coordinate cap");
      if (norm_kind != NormKind::Sup)
        throw std::invalid_argument(
            "rademacher_cauchy_mix: the bounded-series mixture lives in c0 "
            "(sup norm)");
      break;
  }
}

std::vector<double> coefficients_example1(double c, double r, double alpha,
                                          std::uint32_t K) {
  if (!(r * alpha / 2.0 > 1.0))
    throw std::invalid_argument(
        "coefficients_example1: need r*alpha/2 > 1 so that "
        "sum_k a_k^(alpha/2) converges");
  std::vector<double> a(K);
  for (std::uint32_t k = 0; k < K; ++k)
    a[k] = c * std::pow(static_cast<double>(k + 1), -r);
  return a;
}

std::vector<double> coefficients_example2(double p, double k_const,
                                          std::uint32_t cap) {
  if (!(p > 1.0) || !(p < 2.0))
    throw std::invalid_argument("coefficients_example2: p must lie in (1, 2)");
  if (!(k_const > 0.0))
    throw std::invalid_argument("coefficients_example2: k_const must be > 0");
  std::vector<double> a(cap);
  const double expo = (1.0 - p) / 2.0;
  for (std::uint32_t j = 0; j < cap; ++j) {
    const double lj = std::log(static_cast<double>(std::max<std::uint32_t>(
        j + 1, 2)));
    a[j] = k_const * std::pow(lj, expo);
  }
  return a;
}

namespace detail {

namespace {

void ensure_ws(RowWorkspace& ws, std::uint32_t cap) {
  if (ws.u1.size() < cap) {
    ws.u1.resize(cap);
    ws.u2.resize(cap);
    ws.t.resize(cap);
  }
  if (ws.acc.size() < static_cast<std::size_t>(cap) + 1)
    ws.acc.assign(static_cast<std::size_t>(cap) + 1, 0.0);
}

// Fills ws.t[0..cap) with the stable variates of one series draw, each
// coordinate on its own child stream, via the batch transform.
void fill_series_lanes(const TailModelSpec& m, const RandomStream& draw,
                       RowWorkspace& ws) {
  const bool cauchy = (m.alpha == 1.0);  // tan path consumes one uniform
  for (std::uint32_t k = 0; k < m.cap; ++k) {
    RandomStream c = draw.split(k + 1);
    ws.u1[k] = c.next_uniform();
    ws.u2[k] = cauchy ? 0.5 : c.next_uniform();
  }
  sas_transform_batch(ws.u1.data(), ws.u2.data(), ws.t.data(),
                      static_cast<int>(m.cap), m.alpha);
}

// Norm of the lanes scaled by the coefficient envelope.
double lanes_norm(const TailModelSpec& m, const RowWorkspace& ws) {
  if (m.norm_kind == NormKind::Sup) {
    double mx = 0.0;
    for (std::uint32_t k = 0; k < m.cap; ++k)
      mx = std::max(mx, std::fabs(m.coeffs[k] * ws.t[k]));
    return mx;
  }
  double s = 0.0;
  for (std::uint32_t k = 0; k < m.cap; ++k) {
    const double h = m.coeffs[k] * ws.t[k];
    s += h * h;
  }
  return std::sqrt(s);
}

// One scalar draw: signed Pareto magnitude from the coordinate-1 child.
double scalar_draw(const TailModelSpec& m, const RandomStream& draw) {
  RandomStream c = draw.split(1);
  const double mag = sample_pareto(m.alpha, m.x_m, c);
  return sample_rademacher(c) > 0 ? mag : -mag;
}

}  // namespace

double sample_H_norm(const TailModelSpec& m, const RandomStream& s,
                     RowWorkspace& ws) {
  switch (m.variant) {
    case TailModelSpec::Variant::ScalarPareto: {
      RandomStream c = s.split(1);
      return sample_pareto(m.alpha, m.x_m, c);  // sign is norm-irrelevant
    }
    case TailModelSpec::Variant::StableSeries: {
      ensure_ws(ws, m.cap);
      fill_series_lanes(m, s, ws);
      return lanes_norm(m, ws);
    }
    case TailModelSpec::Variant::RademacherCauchyMix: {
      RandomStream aux = s.split(aux_child(m));
      if (sample_rademacher(aux) < 0) {
        // Series branch: |eps_j| = 1 for every j, so the sup norm is the
        // largest coefficient a_1 no matter which signs would be drawn; the
        // signs are norm-irrelevant and are not consumed here.
        return m.coeffs[0];
      }
      // Spike branch: ||x S|| = |S| * ||x||.
      const double spike = sample_cauchy(aux);
      return std::fabs(spike) * norm(m.direction_x, m.norm_kind);
    }
  }
  return 0.0;  // unreachable
}

void materialize_draw(const TailModelSpec& m, const RandomStream& s,
                      RowWorkspace& ws) {
  ensure_ws(ws, m.cap);
  std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
  switch (m.variant) {
    case TailModelSpec::Variant::ScalarPareto:
      ws.acc[1] = scalar_draw(m, s);
      return;
    case TailModelSpec::Variant::StableSeries:
      fill_series_lanes(m, s, ws);
      for (std::uint32_t k = 0; k < m.cap; ++k)
        ws.acc[k + 1] = m.coeffs[k] * ws.t[k];
      return;
    case TailModelSpec::Variant::RademacherCauchyMix: {
      RandomStream aux = s.split(aux_child(m));
      if (sample_rademacher(aux) < 0) {
        for (std::uint32_t k = 0; k < m.cap; ++k) {
          RandomStream c = s.split(k + 1);
          ws.acc[k + 1] =
              m.coeffs[k] * (sample_rademacher(c) > 0 ? 1.0 : -1.0);
        }
      } else {
        const double spike = sample_cauchy(aux);
        for (const auto& [idx, v] : m.direction_x.entries())
          ws.acc[idx] = spike * v;
      }
      return;
    }
  }
}

void accumulate_row(const TailModelSpec& m, double M,
                    const OvershootLaw& overshoot, std::uint64_t n,
                    const RandomStream& s, RowWorkspace& ws) {
  ensure_ws(ws, m.cap);
  const bool truncating = std::isfinite(M);
  switch (m.variant) {
    case TailModelSpec::Variant::ScalarPareto: {
      for (std::uint64_t j = 1; j <= n; ++j) {
        RandomStream draw = s.split(j);
        double x = scalar_draw(m, draw);
        if (truncating && std::fabs(x) > M) {
          RandomStream oc = draw.split(kOvershootChild);
          const double l = sample_overshoot(overshoot, oc);
          x = std::copysign(M + l, x);
        }
        ws.acc[1] += x;
      }
      return;
    }
    case TailModelSpec::Variant::StableSeries: {
      for (std::uint64_t j = 1; j <= n; ++j) {
        RandomStream draw = s.split(j);
        fill_series_lanes(m, draw, ws);
        double r = 1.0;
        if (truncating) {
          const double nrm = lanes_norm(m, ws);
          if (nrm > M) {
            RandomStream oc = draw.split(kOvershootChild);
            r = (M + sample_overshoot(overshoot, oc)) / nrm;
          }
        }
        for (std::uint32_t k = 0; k < m.cap; ++k)
          ws.acc[k + 1] += r * m.coeffs[k] * ws.t[k];
      }
      return;
    }
    case TailModelSpec::Variant::RademacherCauchyMix: {
      for (std::uint64_t j = 1; j <= n; ++j) {
        RandomStream draw = s.split(j);
        RandomStream aux = draw.split(aux_child(m));
        if (sample_rademacher(aux) < 0) {
          // Bounded series branch; ||X||_sup = a_1 exactly.
          double r = 1.0;
          if (truncating && m.coeffs[0] > M) {
            RandomStream oc = draw.split(kOvershootChild);
            r = (M + sample_overshoot(overshoot, oc)) / m.coeffs[0];
          }
          for (std::uint32_t k = 0; k < m.cap; ++k) {
            RandomStream c = draw.split(k + 1);
            const double eps = sample_rademacher(c) > 0 ? 1.0 : -1.0;
            ws.acc[k + 1] += r * m.coeffs[k] * eps;
          }
        } else {
          const double spike = sample_cauchy(aux);
          const double nrm =
              std::fabs(spike) * norm(m.direction_x, m.norm_kind);
          double r = 1.0;
          if (truncating && nrm > M) {
            RandomStream oc = draw.split(kOvershootChild);
            r = (M + sample_overshoot(overshoot, oc)) / nrm;
          }
          for (const auto& [idx, v] : m.direction_x.entries())
            ws.acc[idx] += r * spike * v;
        }
      }
      return;
    }
  }
}

SeqVec dense_to_seqvec(const std::vector<double>& acc, std::uint32_t cap) {
  std::vector<SeqVec::Entry> entries;
  entries.reserve(cap);
  for (std::uint32_t k = 1; k <= cap; ++k)
    if (acc[k] != 0.0) entries.emplace_back(k, acc[k]);
  return SeqVec(std::move(entries), cap);
}

}  // namespace detail

SeqVec sample_H(const TailModelSpec& model, const RandomStream& s) {
  model.validate();
  detail::RowWorkspace ws;
  detail::ensure_ws(ws, model.cap);
  // A single untruncated draw via the row core: n = 1, infinite threshold.
  // The draw stream is child 1 of s, matching the row discipline.
  detail::accumulate_row(model, std::numeric_limits<double>::infinity(),
                         OvershootLaw::zero(), 1, s, ws);
  return detail::dense_to_seqvec(ws.acc, model.cap);
}

RowSumSample sample_truncated_row(const TailModelSpec& model,
                                  const TruncationScheme& scheme,
                                  std::uint64_t n, const RandomStream& s,
                                  std::optional<double> b_n,
                                  std::uint64_t tail_reps) {
  if (n == 0) throw std::invalid_argument("sample_truncated_row: n >= 1");
  model.validate();
  const double m_n = m_schedule_eval(scheme, n);
  double bn;
  if (b_n.has_value()) {
    bn = *b_n;
  } else {
    // Tail estimation on child 0; rows use children 1..n, so no collision.
    const ExceedEstimate p = exceed_prob(model, m_n, s.split(0), tail_reps);
    bn = scaling_Bn(n, m_n, p.estimate);
  }
  detail::RowWorkspace ws;
  detail::ensure_ws(ws, model.cap);
  detail::accumulate_row(model, m_n, scheme.overshoot, n, s, ws);
  return RowSumSample{detail::dense_to_seqvec(ws.acc, model.cap), n, m_n, bn};
}

SeqVec sample_row_untruncated(const TailModelSpec& model, std::uint64_t n,
                              const RandomStream& s) {
  if (n == 0) throw std::invalid_argument("sample_row_untruncated: n >= 1");
  model.validate();
  detail::RowWorkspace ws;
  detail::ensure_ws(ws, model.cap);
  detail::accumulate_row(model, std::numeric_limits<double>::infinity(),
                         OvershootLaw::zero(), n, s, ws);
  return detail::dense_to_seqvec(ws.acc, model.cap);
}

ExceedEstimate exceed_prob(const TailModelSpec& model, double M,
                           const RandomStream& s, std::uint64_t reps) {
  if (!(M > 0.0)) throw std::invalid_argument("exceed_prob: M must be > 0");
  model.validate();
  if (model.variant == TailModelSpec::Variant::ScalarPareto) {
    // ||H|| = |X| is exactly Pareto: P(|X| > M) = min(1, (x_m/M)^alpha).
    const double p = M <= model.x_m
                         ? 1.0
                         : std::pow(model.x_m / M, model.alpha);
    return ExceedEstimate{p, 0.0, true};
  }
  constexpr std::uint64_t kBatches = 100;
  if (reps < 1000)
    throw std::invalid_argument(
        "exceed_prob: Monte Carlo tail estimation needs reps >= 1000 for a "
        "meaningful batch CI");
  const std::uint64_t per_batch = reps / kBatches;
  detail::RowWorkspace ws;
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t b = 0; b < kBatches; ++b) {
    const RandomStream bs = s.split(b);
    std::uint64_t hits = 0;
    for (std::uint64_t j = 1; j <= per_batch; ++j) {
      if (detail::sample_H_norm(model, bs.split(j), ws) > M) ++hits;
    }
    const double pb = static_cast<double>(hits) / per_batch;
    sum += pb;
    sumsq += pb * pb;
  }
  const double mean = sum / kBatches;
  const double var = std::max(0.0, sumsq / kBatches - mean * mean) *
                     kBatches / (kBatches - 1.0);
  constexpr double z99 = 2.5758293035489004;  // two-sided 99% normal quantile
  const double ci = z99 * std::sqrt(var / kBatches);
  return ExceedEstimate{mean, ci, false};
}

const char* RegimeReport::label_name(Label l) {
  switch (l) {
    case Label::Soft: return "soft";
    case Label::Hard: return "hard";
    case Label::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

RegimeReport classify_regime(const TailModelSpec& model,
                             const TruncationScheme& scheme,
                             const std::vector<std::uint64_t>& n_grid,
                             const RandomStream& s, std::uint64_t tail_reps) {
  if (n_grid.size() < 2)
    throw std::invalid_argument(
        "classify_regime: need at least two grid points to order the trace");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("classify_regime: n_grid must be increasing");

  RegimeReport rep;
  rep.n_grid = n_grid;
  rep.method = model.variant == TailModelSpec::Variant::ScalarPareto
                   ? RegimeReport::Method::Analytic
                   : RegimeReport::Method::MonteCarlo;
  rep.mc_reps = rep.method == RegimeReport::Method::Analytic ? 0 : tail_reps;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const double m_n = m_schedule_eval(scheme, n_grid[i]);
    const ExceedEstimate p =
        exceed_prob(model, m_n, s.split(i), tail_reps);
    rep.np_exceed.push_back(static_cast<double>(n_grid[i]) * p.estimate);
    rep.np_ci.push_back(static_cast<double>(n_grid[i]) * p.ci_halfwidth);
  }

  const auto& v = rep.np_exceed;
  const auto& ci = rep.np_ci;
  // An all-zero trace (no exceedance observed at any grid point) cannot be
  // ordered, but it is operationally unambiguous: the truncation never binds
  // at any tested n, which is soft behavior taken to its extreme. Label it
  // Soft rather than Indeterminate so downstream soft-regime checks accept
  // schedules whose thresholds sit above every realized norm.
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    rep.label = RegimeReport::Label::Soft;
    return rep;
  }
  const std::size_t last = v.size() - 1;
  bool inc = true, dec = true;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i + 1] > v[i])) inc = false;
    if (!(v[i + 1] < v[i])) dec = false;
  }
  auto label_of = [&](bool certified) {
    if (inc && v[last] > 10.0 * v[0]) {
      if (certified) return RegimeReport::Label::Hard;
    } else if (dec && v[last] < 0.1 * v[0]) {
      if (certified) return RegimeReport::Label::Soft;
    }
    return RegimeReport::Label::Indeterminate;
  };
  const RegimeReport::Label point_label = label_of(true);
  if (rep.method == RegimeReport::Method::Analytic ||
      point_label == RegimeReport::Label::Indeterminate) {
    rep.label = point_label;
    return rep;
  }
  // Monte-Carlo trace: the point-estimate label must survive once the CIs
  // are accounted for, otherwise the ordering is not trustworthy.
  bool certified = true;
  for (std::size_t i = 0; i + 1 < v.size() && certified; ++i) {
    const double gap = std::fabs(v[i + 1] - v[i]);
    if (gap <= ci[i + 1] + ci[i]) certified = false;
  }
  if (point_label == RegimeReport::Label::Hard &&
      !(v[last] - ci[last] > 10.0 * (v[0] + ci[0])))
    certified = false;
  if (point_label == RegimeReport::Label::Soft &&
      !(v[last] + ci[last] < 0.1 * (v[0] - ci[0])))
    certified = false;
  if (!certified)
    throw std::runtime_error(
        "classify_regime: Monte-Carlo confidence intervals are too wide to "
        "order the regime trace; increase tail_reps");
  rep.label = point_label;
  return rep;
}

std::pair<double, double> stable_normalization(const TailModelSpec& model,
                                               std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("stable_normalization: n >= 1");
  if (!model.tail_constant.has_value())
    throw std::invalid_argument(
        "stable_normalization: model lacks a tail constant; estimate one "
        "with fit_tail_constant or supply it in the configuration");
  const double C = *model.tail_constant;
  const double a = model.tail_index();
  // a_n = 0: every implemented model is symmetric.
  return {0.0, std::pow(C * static_cast<double>(n), 1.0 / a)};
}

TailFit fit_tail_constant(const TailModelSpec& model, const RandomStream& s,
                          std::uint64_t draws) {
  if (draws < 10000)
    throw std::invalid_argument(
        "fit_tail_constant: need at least 1e4 draws to resolve the 0.999 "
        "quantile");
  model.validate();
  detail::RowWorkspace ws;
  std::vector<double> norms(draws);
  for (std::uint64_t j = 0; j < draws; ++j)
    norms[j] = detail::sample_H_norm(model, s.split(j + 1), ws);
  std::sort(norms.begin(), norms.end());
  const double a = model.tail_index();
  const double qs[3] = {0.99, 0.995, 0.999};
  double log_sum = 0.0, cmin = 0.0, cmax = 0.0;
  double thresholds[3];
  for (int i = 0; i < 3; ++i) {
    const auto pos = static_cast<std::size_t>(qs[i] * (draws - 1));
    const double x = norms[pos];
    const double p_hat =
        static_cast<double>(norms.end() -
                            std::upper_bound(norms.begin(), norms.end(), x)) /
        static_cast<double>(draws);
    const double c = std::pow(x, a) * p_hat;
    log_sum += std::log(c);
    cmin = (i == 0) ? c : std::min(cmin, c);
    cmax = (i == 0) ? c : std::max(cmax, c);
    thresholds[i] = x;
  }
  TailFit fit;
  fit.c_hat = std::exp(log_sum / 3.0);
  fit.spread = cmax / cmin - 1.0;
  fit.q99 = thresholds[0];
  fit.q999 = thresholds[2];
  fit.draws = draws;
  return fit;
}

double cap_error_budget(const TailModelSpec& model, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("cap_error_budget: delta must be > 0");
  if (model.variant != TailModelSpec::Variant::StableSeries) return 0.0;
  // sum_{k>K} P(a_k |T_k| > delta) <= C' delta^(-a) sum_{k>K} a_k^a with
  // a_k = c k^(-r); the coefficient tail sum is bounded by the integral
  // c^a K^(1 - r a) / (r a - 1). C' doubles the numerical tail constant.
  const double a = model.alpha;
  const double ra = model.coeff_r * a;
  const double coeff_tail = std::pow(model.coeff_c, a) *
                            std::pow(static_cast<double>(model.cap), 1.0 - ra) /
                            (ra - 1.0);
  return 2.0 * sas_tail_constant(a) * std::pow(delta, -a) * coeff_tail;
}

}  // namespace trunclab
