// trunclab — sequence-space vectors, norms, and finite-support functionals.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.
//
// The ambient spaces are c0 (real sequences converging to zero, sup norm) and
// l2 (square-summable sequences, Euclidean norm). Vectors are conceptually
// infinite but represented with finite support and a hard cap on the
// coordinate index; every generator that uses a cap must justify it with a
// truncation-error budget (see models.hpp). Storage is sparse (index, value)
// because several models are genuinely sparse (basis vectors, a single-
// direction Cauchy spike); dense accumulation buffers are used inside
// row-sum loops where density is the norm.
//
// The quotient tail norm below realizes the distance from a vector to the
// span of the first k basis vectors: for these two norms it is simply the
// norm of the coordinates beyond k.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace trunclab {

/// Which norm the ambient space carries.
enum class NormKind {
  Sup,  // c0: sup_i |v_i|
  L2,   // l2: sqrt(sum v_i^2)
};

/// Finite-support sequence-space vector.
///
/// Invariants: indices are 1-based, strictly increasing, and <= cap; values
/// are finite and nonzero (exact zeros are pruned on construction).
class SeqVec {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  SeqVec() : cap_(0) {}

  /// Builds from (index, value) entries; sorts, merges duplicates, prunes
  /// exact zeros. Throws std::invalid_argument on index 0, index > cap, or a
  /// non-finite value.
  SeqVec(std::vector<Entry> entries, std::uint32_t cap);

  /// Basis vector scale * e_index.
  static SeqVec basis(std::uint32_t index, double scale, std::uint32_t cap);

  const std::vector<Entry>& entries() const { return entries_; }
  std::uint32_t cap() const { return cap_; }
  bool empty() const { return entries_.empty(); }

  /// Coordinate lookup (0 off support). Binary search.
  double coord(std::uint32_t index) const;

 private:
  std::vector<Entry> entries_;
  std::uint32_t cap_;

  friend SeqVec scale_add(double a, const SeqVec& v, const SeqVec& w);
  friend SeqVec scale(double a, const SeqVec& v);
};

/// Finite-support continuous linear functional. The dual norm is
/// sum |w_i| under the sup norm and sqrt(sum w_i^2) under the l2 norm.
class Functional {
 public:
  Functional() : kind_(NormKind::Sup) {}
  Functional(std::vector<SeqVec::Entry> weights, NormKind kind);

  /// Coordinate projection e_index^*.
  static Functional coordinate(std::uint32_t index, NormKind kind);

  const std::vector<SeqVec::Entry>& weights() const { return weights_; }
  NormKind norm_kind() const { return kind_; }
  double dual_norm() const;

 private:
  std::vector<SeqVec::Entry> weights_;
  NormKind kind_;
};

/// ||v|| under the given norm. The sup norm is an exact coordinate max (no
/// floating-point summation); the l2 norm accumulates squares in order.
double norm(const SeqVec& v, NormKind kind);

/// f(v) = sum_i f.w_i * v_i over the common support.
double apply_functional(const Functional& f, const SeqVec& v);

/// Quotient tail norm: the norm of v restricted to coordinates with index
/// > k (distance to span(e_1..e_k)). tail_norm(v, 0, kind) == norm(v, kind).
double tail_norm(const SeqVec& v, std::uint32_t k, NormKind kind);

/// a*v + w with exact-zero pruning. The result's cap is max(v.cap, w.cap).
SeqVec scale_add(double a, const SeqVec& v, const SeqVec& w);

/// a*v.
SeqVec scale(double a, const SeqVec& v);

/// v / ||v|| under the given norm. Throws std::invalid_argument on the zero
/// vector. The result has norm 1 to within 1e-12 relative (exactly 1 for the
/// sup norm's maximal coordinate magnitude when the division is exact).
SeqVec direction(const SeqVec& v, NormKind kind);

}  // namespace trunclab
