// trunclab — unit tests for sequence-space vectors, norms, functionals and
// the quotient tail norm.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trunclab/banach.hpp"
#include "trunclab/rng.hpp"

namespace {

using namespace trunclab;

constexpr std::uint32_t kCap = 64;

// Random sparse vector: 1..6 entries, indices in [1, kCap], magnitudes
// log-uniform over about six decades so both tiny and large scales appear.
SeqVec random_vec(RandomStream& s) {
  const int k = 1 + static_cast<int>(s.next_uniform() * 6.0);
  std::vector<SeqVec::Entry> entries;
  for (int i = 0; i < k; ++i) {
    const auto idx =
        static_cast<std::uint32_t>(1 + s.next_uniform() * (kCap - 1));
    const double mag = std::exp(-7.0 + 14.0 * s.next_uniform());
    entries.emplace_back(idx, sample_rademacher(s) * mag);
  }
  return SeqVec(entries, kCap);
}

Functional random_functional(RandomStream& s, NormKind kind) {
  const int k = 1 + static_cast<int>(s.next_uniform() * 4.0);
  std::vector<SeqVec::Entry> weights;
  for (int i = 0; i < k; ++i) {
    const auto idx =
        static_cast<std::uint32_t>(1 + s.next_uniform() * (kCap - 1));
    weights.emplace_back(idx, sample_rademacher(s) *
                                  std::exp(-3.0 + 6.0 * s.next_uniform()));
  }
  return Functional(weights, kind);
}

}  // namespace

TEST_SUITE("banach") {

TEST_CASE("norms of a two-entry vector") {
  const SeqVec v({{2, 3.0}, {5, -4.0}}, 8);
  CHECK(norm(v, NormKind::Sup) == 4.0);
  CHECK(norm(v, NormKind::L2) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("the zero vector has norm zero under both norms") {
  const SeqVec z;
  CHECK(norm(z, NormKind::Sup) == 0.0);
  CHECK(norm(z, NormKind::L2) == 0.0);
}

TEST_CASE("construction enforces the invariants") {
  CHECK_THROWS_AS(SeqVec({{0, 1.0}}, 8), std::invalid_argument);
  CHECK_THROWS_AS(SeqVec({{9, 1.0}}, 8), std::invalid_argument);
  CHECK_THROWS_AS(SeqVec({{1, std::nan("")}}, 8), std::invalid_argument);

  // Exact zeros are pruned and duplicates merged.
  const SeqVec pruned({{3, 0.0}, {1, 2.0}}, 8);
  REQUIRE(pruned.entries().size() == 1);
  CHECK(pruned.coord(1) == 2.0);
  const SeqVec merged({{2, 1.5}, {2, 2.5}}, 8);
  REQUIRE(merged.entries().size() == 1);
  CHECK(merged.coord(2) == 4.0);
}

TEST_CASE("apply_functional projects and respects the zero functional") {
  const SeqVec v({{1, 7.0}, {3, 2.0}}, 8);
  CHECK(apply_functional(Functional::coordinate(1, NormKind::Sup), v) == 7.0);
  CHECK(apply_functional(Functional(), v) == 0.0);
}

TEST_CASE("duality inequality |f(v)| <= ||f||' ||v|| on random pairs") {
  RandomStream s(123);
  for (int i = 0; i < 100000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec v = random_vec(s);
    const Functional f = random_functional(s, kind);
    const double lhs = std::fabs(apply_functional(f, v));
    const double rhs = f.dual_norm() * norm(v, kind);
    REQUIRE(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("apply_functional is linear on random triples") {
  RandomStream s(321);
  for (int i = 0; i < 100000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec v = random_vec(s);
    const SeqVec w = random_vec(s);
    const Functional f = random_functional(s, kind);
    const double a = sample_rademacher(s) * std::exp(-2.0 +
                                                     4.0 * s.next_uniform());
    const double lhs = apply_functional(f, scale_add(a, v, w));
    const double rhs = a * apply_functional(f, v) + apply_functional(f, w);
    const double scale_ref =
        std::fabs(a) * f.dual_norm() * norm(v, kind) +
        f.dual_norm() * norm(w, kind);
    REQUIRE(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, scale_ref));
  }
}

TEST_CASE("dual norms are the l1 and l2 weight norms") {
  const Functional f({{1, 3.0}, {4, -4.0}}, NormKind::Sup);
  CHECK(f.dual_norm() == doctest::Approx(7.0).epsilon(1e-12));
  const Functional g({{1, 3.0}, {4, -4.0}}, NormKind::L2);
  CHECK(g.dual_norm() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("tail norm cuts coordinates at and below k") {
  const SeqVec v({{2, 3.0}, {5, -4.0}}, 8);
  CHECK(tail_norm(v, 2, NormKind::Sup) == 4.0);
  CHECK(tail_norm(v, 5, NormKind::Sup) == 0.0);
  CHECK(tail_norm(v, 0, NormKind::Sup) == norm(v, NormKind::Sup));
  CHECK(tail_norm(v, 0, NormKind::L2) == norm(v, NormKind::L2));
}

TEST_CASE("tail norm is non-increasing in k on random vectors") {
  RandomStream s(777);
  for (int i = 0; i < 100000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec v = random_vec(s);
    const auto k = static_cast<std::uint32_t>(s.next_uniform() * kCap);
    REQUIRE(tail_norm(v, k + 1, kind) <= tail_norm(v, k, kind));
  }
}

TEST_CASE("scale_add merges, scales, and prunes") {
  const SeqVec e1 = SeqVec::basis(1, 1.0, 8);
  const SeqVec two = scale_add(1.0, e1, e1);
  REQUIRE(two.entries().size() == 1);
  CHECK(two.coord(1) == 2.0);

  const SeqVec w({{2, 5.0}}, 8);
  const SeqVec just_w = scale_add(0.0, e1, w);
  CHECK(just_w.entries() == w.entries());

  // 1*v + (-1)*v cancels exactly and the zero coordinates are pruned.
  const SeqVec v({{3, 1.25}}, 8);
  CHECK(scale_add(-1.0, v, v).empty());
}

TEST_CASE("norm homogeneity on random vectors") {
  RandomStream s(555);
  for (int i = 0; i < 10000; ++i) {
    const SeqVec v = random_vec(s);
    const double a = sample_rademacher(s) * std::exp(-3.0 +
                                                     6.0 * s.next_uniform());
    // Sup: |a * v_i| = |a| * |v_i| holds exactly per IEEE multiplication.
    CHECK(norm(scale(a, v), NormKind::Sup) ==
          std::fabs(a) * norm(v, NormKind::Sup));
    const double l2 = norm(scale(a, v), NormKind::L2);
    const double want = std::fabs(a) * norm(v, NormKind::L2);
    REQUIRE(l2 == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("triangle inequality on random pairs") {
  RandomStream s(987);
  for (int i = 0; i < 10000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec v = random_vec(s);
    const SeqVec w = random_vec(s);
    const double lhs = norm(scale_add(1.0, v, w), kind);
    const double rhs = norm(v, kind) + norm(w, kind);
    REQUIRE(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("direction normalizes and is idempotent") {
  CHECK(direction(SeqVec::basis(2, 3.0, 8), NormKind::Sup).coord(2) == 1.0);

  const SeqVec v({{1, 3.0}, {2, 4.0}}, 8);
  const SeqVec d = direction(v, NormKind::L2);
  CHECK(d.coord(1) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(d.coord(2) == doctest::Approx(0.8).epsilon(1e-12));

  RandomStream s(42);
  for (int i = 0; i < 1000; ++i) {
    const NormKind kind = (i % 2 == 0) ? NormKind::Sup : NormKind::L2;
    const SeqVec u = random_vec(s);
    const SeqVec d1 = direction(u, kind);
    const SeqVec d2 = direction(d1, kind);
    REQUIRE(norm(d1, kind) == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(d1.entries().size() == d2.entries().size());
    for (std::size_t j = 0; j < d1.entries().size(); ++j)
      REQUIRE(d2.entries()[j].second ==
              doctest::Approx(d1.entries()[j].second).epsilon(1e-12));
  }

  CHECK_THROWS_AS(direction(SeqVec(), NormKind::Sup), std::invalid_argument);
}

}  // TEST_SUITE
