// trunclab — unit tests for the radial truncation map, threshold schedules,
// overshoot laws and the B_n scaling.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trunclab/banach.hpp"
#include "trunclab/rng.hpp"
#include "trunclab/truncation.hpp"

namespace {

using namespace trunclab;

constexpr std::uint32_t kCap = 32;

SeqVec random_vec(RandomStream& s) {
  const int k = 1 + static_cast<int>(s.next_uniform() * 5.0);
  std::vector<SeqVec::Entry> entries;
  for (int i = 0; i < k; ++i) {
    const auto idx =
        static_cast<std::uint32_t>(1 + s.next_uniform() * (kCap - 1));
    entries.emplace_back(idx, sample_rademacher(s) *
                                  std::exp(-5.0 + 10.0 * s.next_uniform()));
  }
  return SeqVec(entries, kCap);
}

}  // namespace

TEST_SUITE("truncation") {

TEST_CASE("below the threshold the map is the identity, whatever l is") {
  const SeqVec h = SeqVec::basis(1, 1.5, 4);
  const SeqVec out = truncate(h, 2.0, 7.0, NormKind::Sup);
  CHECK(out.entries() == h.entries());
}

TEST_CASE("above the threshold the map projects radially") {
  const SeqVec h = SeqVec::basis(1, 5.0, 4);
  const SeqVec out = truncate(h, 2.0, 0.0, NormKind::Sup);
  REQUIRE(out.entries().size() == 1);
  CHECK(out.coord(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hand oracle: (3,4) at M=2.5, l=0.5 lands on (1.8, 2.4)") {
  const SeqVec h({{1, 3.0}, {2, 4.0}}, 4);
  const SeqVec out = truncate(h, 2.5, 0.5, NormKind::L2);
  CHECK(out.coord(1) == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(out.coord(2) == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(norm(out, NormKind::L2) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("the zero vector passes through") {
  CHECK(truncate(SeqVec(), 1.0, 1.0, NormKind::Sup).empty());
}

TEST_CASE("norm identity and direction preservation on random inputs") {
  RandomStream s(1001);
  for (int i = 0; i < 10000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec h = random_vec(s);
    const double M = std::exp(-2.0 + 6.0 * s.next_uniform());
    const double l = (i % 3 == 0) ? 0.0 : std::exp(-1.0 +
                                                   2.0 * s.next_uniform());
    const SeqVec out = truncate(h, M, l, kind);
    const double nh = norm(h, kind);
    const double want = nh <= M ? nh : M + l;
    REQUIRE(norm(out, kind) == doctest::Approx(want).epsilon(1e-12));

    const SeqVec dh = direction(h, kind);
    const SeqVec dout = direction(out, kind);
    REQUIRE(dh.entries().size() == dout.entries().size());
    for (std::size_t j = 0; j < dh.entries().size(); ++j) {
      REQUIRE(dh.entries()[j].first == dout.entries()[j].first);
      REQUIRE(dout.entries()[j].second ==
              doctest::Approx(dh.entries()[j].second).epsilon(1e-10));
    }
  }
}

TEST_CASE("odd symmetry: truncate(-h) = -truncate(h)") {
  RandomStream s(2002);
  for (int i = 0; i < 10000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec h = random_vec(s);
    const double M = std::exp(-2.0 + 6.0 * s.next_uniform());
    const double l = std::exp(-1.0 + 2.0 * s.next_uniform());
    const SeqVec a = truncate(scale(-1.0, h), M, l, kind);
    const SeqVec b = scale(-1.0, truncate(h, M, l, kind));
    REQUIRE(a.entries().size() == b.entries().size());
    for (std::size_t j = 0; j < a.entries().size(); ++j) {
      REQUIRE(a.entries()[j].first == b.entries()[j].first);
      REQUIRE(a.entries()[j].second == b.entries()[j].second);
    }
  }
}

TEST_CASE("threshold schedule evaluates the power law") {
  const TruncationScheme t(1.0, 0.5, OvershootLaw::zero());
  CHECK(m_schedule_eval(t, 100) == doctest::Approx(10.0).epsilon(1e-12));

  const TruncationScheme flat(3.5, 0.0, OvershootLaw::zero());
  CHECK(m_schedule_eval(flat, 1) == 3.5);
  CHECK(m_schedule_eval(flat, 123456) == 3.5);

  const TruncationScheme grow(2.0, 0.8, OvershootLaw::zero());
  double prev = 0.0;
  for (std::uint64_t n = 1; n <= 10000; n += 13) {
    const double m = m_schedule_eval(grow, n);
    REQUIRE(m >= prev);
    prev = m;
  }
}

TEST_CASE("zero overshoot is identically zero") {
  RandomStream s(3003);
  const OvershootLaw law = OvershootLaw::zero();
  for (int i = 0; i < 1000; ++i) CHECK(sample_overshoot(law, s) == 0.0);
}

TEST_CASE("exponential overshoot matches its first two moments") {
  RandomStream s(4004);
  const OvershootLaw law = OvershootLaw::exponential(2.0);
  double sum = 0.0, sumsq = 0.0;
  constexpr int kN = 1000000;
  for (int i = 0; i < kN; ++i) {
    const double l = sample_overshoot(law, s);
    REQUIRE(l >= 0.0);
    sum += l;
    sumsq += l * l;
  }
  CHECK(sum / kN == doctest::Approx(2.0).epsilon(0.005));    // 2 +- 0.01
  CHECK(sumsq / kN == doctest::Approx(8.0).epsilon(0.0125));  // 8 +- 0.1
}

TEST_CASE("half-gaussian overshoot matches its first two moments") {
  RandomStream s(5005);
  const OvershootLaw law = OvershootLaw::half_gaussian(1.0);
  double sum = 0.0, sumsq = 0.0;
  constexpr int kN = 1000000;
  for (int i = 0; i < kN; ++i) {
    const double l = sample_overshoot(law, s);
    REQUIRE(l >= 0.0);
    sum += l;
    sumsq += l * l;
  }
  // E L = sigma sqrt(2/pi) ~ 0.79788, E L^2 = sigma^2.
  CHECK(sum / kN == doctest::Approx(0.7978845608).epsilon(0.01));
  CHECK(sumsq / kN == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("overshoot laws validate their parameters") {
  CHECK_THROWS_AS(OvershootLaw::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(OvershootLaw::exponential(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(OvershootLaw::half_gaussian(0.0), std::invalid_argument);
}

TEST_CASE("B_n scaling arithmetic and monotonicity") {
  CHECK(scaling_Bn(100, 10.0, 0.1) ==
        doctest::Approx(31.6227766017).epsilon(1e-9));
  CHECK(scaling_Bn(100, 10.0, 0.0) == 0.0);
  CHECK(scaling_Bn(200, 10.0, 0.1) > scaling_Bn(100, 10.0, 0.1));
  CHECK(scaling_Bn(100, 20.0, 0.1) > scaling_Bn(100, 10.0, 0.1));
  CHECK(scaling_Bn(100, 10.0, 0.2) > scaling_Bn(100, 10.0, 0.1));
}

}  // TEST_SUITE
