// trunclab — splittable random streams and scalar samplers.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.
//
// Reproducible parallel Monte Carlo needs random streams that can be handed
// to independent tasks without any coordination at draw time. We use a
// hierarchical splitting scheme: a stream is identified by a 64-bit seed plus
// a path of child indices, and its generator state is derived by hashing
// (seed, path) with the SplitMix64 finalizer (Steele, Lea & Flood 2014;
// Vigna 2015). Two properties follow by construction:
//
//   * the same (seed, path) yields the same sequence on every run, and
//   * a child's sequence is independent of how much the parent has been
//     drawn from — splitting never consumes parent state.
//
// The path is never materialized: a stream carries the running lineage hash
// of its path, so splitting costs a constant handful of SplitMix64 rounds
// regardless of depth — cheap enough for a fresh child per coordinate of a
// vector draw. The per-stream generator is xoshiro256++ (Blackman & Vigna
// 2019): 256-bit state, 64-bit output, passes BigCrush.
//
// Uniforms are mapped to the open interval (0,1): the top 53 bits scaled by
// 2^-53, rejecting the (probability 2^-53) exact zero. Downstream samplers
// take log(u) and tan(pi(u-1/2)), so both endpoints must be unreachable.

#pragma once

#include <cstdint>
#include <vector>

namespace trunclab {

namespace detail {

/// SplitMix64 step (Vigna 2015, public domain reference constants).
inline std::uint64_t splitmix64_next(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Mixes one path element into a lineage hash. The odd multiplier keeps
/// sibling ids well separated before the finalizer scrambles them.
inline std::uint64_t mix_path_element(std::uint64_t h, std::uint64_t id) {
  std::uint64_t x = h ^ (0x9e3779b97f4a7c15ULL * (id + 1));
  return splitmix64_next(x);
}

}  // namespace detail

/// A value-like splittable random stream.
///
/// Identity is (seed, path); the xoshiro256++ state is derived from that
/// identity alone. Copying a stream copies its current position. A single
/// instance must not be drawn from concurrently; hand each task its own
/// split child instead.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : RandomStream(seed, root_lineage(seed)) {}

  /// Stream at `path` below the root: equivalent to splitting off each
  /// element in turn.
  RandomStream(std::uint64_t seed, const std::vector<std::uint64_t>& path);

  /// Child stream with the path extended by `child_id`. The parent is not
  /// advanced or otherwise affected.
  RandomStream split(std::uint64_t child_id) const {
    return RandomStream(seed_, detail::mix_path_element(lineage_, child_id));
  }

  /// Next raw 64-bit word (xoshiro256++, Blackman & Vigna 2019).
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw strictly inside (0,1).
  double next_uniform() {
    for (;;) {
      const std::uint64_t bits = next_u64() >> 11;
      if (bits != 0)  // reject exact 0 so the result lies strictly in (0,1)
        return static_cast<double>(bits) * 0x1.0p-53;
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  RandomStream(std::uint64_t seed, std::uint64_t lineage)
      : seed_(seed), lineage_(lineage) {
    std::uint64_t sm = lineage_;
    for (auto& w : state_) w = detail::splitmix64_next(sm);
    // xoshiro256++ requires a nonzero state; SplitMix64 output words are
    // individually zero with probability 2^-64 each, but guard anyway.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static std::uint64_t root_lineage(std::uint64_t seed) {
    std::uint64_t x = seed;
    const std::uint64_t h = detail::splitmix64_next(x);
    return h ^ x;  // keep the raw seed in play so seed 0 is not special
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t lineage_;
  std::uint64_t state_[4];
};

/// Symmetric alpha-stable parameters: characteristic function exp(-|t|^alpha).
/// No skew or shift parameters exist for this law by construction.
struct StableParams {
  double alpha;  // in (0, 2]
};

/// Uniform ±1 sign.
int sample_rademacher(RandomStream& s);

/// Symmetric alpha-stable draw with characteristic function exp(-|t|^alpha),
/// via the Chambers–Mallows–Stuck transform (Chambers, Mallows & Stuck 1976)
/// in its symmetric special form
///
///   T = sin(alpha·theta)/cos(theta)^{1/alpha} ·
///       (cos((1-alpha)·theta)/W)^{(1-alpha)/alpha},
///
/// theta uniform on (-pi/2, pi/2), W standard exponential. Exact and
/// rejection-free. alpha == 1 uses the analytic limit tan(theta) (one uniform
/// consumed); alpha == 2 reduces to 2·sin(theta)·sqrt(W), i.e. Normal(0, 2).
double sample_sas(const StableParams& p, RandomStream& s);

/// Standard (symmetric) Cauchy draw, tan(pi(u - 1/2)).
double sample_cauchy(RandomStream& s);

/// Pareto draw by inversion: P(X > x) = (x_m/x)^alpha for x >= x_m.
double sample_pareto(double alpha, double x_m, RandomStream& s);

/// Standard normal draw (Box–Muller; consumes two uniforms). Used by the
/// half-Gaussian overshoot law and nowhere else on hot paths.
double sample_normal(RandomStream& s);

namespace detail {

/// Batch Chambers–Mallows–Stuck transform: out[i] = T(u1[i], u2[i]).
/// Lives in its own translation unit compiled with vector-math-friendly
/// flags; agrees with sample_sas in distribution (not bit-for-bit — the
/// scalar path keeps strict libm semantics). alpha == 1 ignores u2.
void sas_transform_batch(const double* u1, const double* u2, double* out,
                         int m, double alpha);

}  // namespace detail

}  // namespace trunclab
