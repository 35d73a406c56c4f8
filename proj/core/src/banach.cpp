// trunclab — sequence-space vectors, norms, and finite-support functionals.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/banach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trunclab {

namespace {

void check_entry(std::uint32_t index, double value, std::uint32_t cap) {
  if (index == 0)
    throw std::invalid_argument("SeqVec: coordinate indices are 1-based");
  if (index > cap)
    throw std::invalid_argument("SeqVec: coordinate index exceeds cap");
  if (!std::isfinite(value))
    throw std::invalid_argument("SeqVec: non-finite coordinate value");
}

}  // namespace

SeqVec::SeqVec(std::vector<Entry> entries, std::uint32_t cap)
    : entries_(std::move(entries)), cap_(cap) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  // Merge duplicate indices, validate, prune exact zeros.
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const Entry& e : entries_) {
    check_entry(e.first, e.second, cap_);
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Entry& e) { return e.second == 0.0; }),
               merged.end());
  entries_ = std::move(merged);
}

SeqVec SeqVec::basis(std::uint32_t index, double value, std::uint32_t cap) {
  return SeqVec({{index, value}}, cap);
}

double SeqVec::coord(std::uint32_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::uint32_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0.0;
}

Functional::Functional(std::vector<SeqVec::Entry> weights, NormKind kind)
    : kind_(kind) {
  // Reuse SeqVec's normalization (sort/merge/validate) with an unbounded cap.
  SeqVec normalized(std::move(weights), UINT32_MAX);
  weights_ = normalized.entries();
}

Functional Functional::coordinate(std::uint32_t index, NormKind kind) {
  return Functional({{index, 1.0}}, kind);
}

double Functional::dual_norm() const {
  if (kind_ == NormKind::Sup) {
    double s = 0.0;
    for (const auto& [i, w] : weights_) s += std::fabs(w);
    return s;
  }
  double s = 0.0;
  for (const auto& [i, w] : weights_) s += w * w;
  return std::sqrt(s);
}

double norm(const SeqVec& v, NormKind kind) {
  if (kind == NormKind::Sup) {
    double m = 0.0;
    for (const auto& [i, x] : v.entries()) m = std::max(m, std::fabs(x));
    return m;
  }
  double s = 0.0;
  for (const auto& [i, x] : v.entries()) s += x * x;
  return std::sqrt(s);
}

double apply_functional(const Functional& f, const SeqVec& v) {
  // Merge-join over the two sorted supports.
  double acc = 0.0;
  auto fi = f.weights().begin();
  auto vi = v.entries().begin();
  while (fi != f.weights().end() && vi != v.entries().end()) {
    if (fi->first < vi->first) {
      ++fi;
    } else if (vi->first < fi->first) {
      ++vi;
    } else {
      acc += fi->second * vi->second;
      ++fi;
      ++vi;
    }
  }
  return acc;
}

double tail_norm(const SeqVec& v, std::uint32_t k, NormKind kind) {
  if (kind == NormKind::Sup) {
    double m = 0.0;
    for (const auto& [i, x] : v.entries())
      if (i > k) m = std::max(m, std::fabs(x));
    return m;
  }
  double s = 0.0;
  for (const auto& [i, x] : v.entries())
    if (i > k) s += x * x;
  return std::sqrt(s);
}

SeqVec scale_add(double a, const SeqVec& v, const SeqVec& w) {
  SeqVec out;
  out.cap_ = std::max(v.cap(), w.cap());
  out.entries_.reserve(v.entries().size() + w.entries().size());
  auto vi = v.entries().begin();
  auto wi = w.entries().begin();
  auto push = [&out](std::uint32_t i, double x) {
    if (x != 0.0) out.entries_.emplace_back(i, x);
  };
  while (vi != v.entries().end() || wi != w.entries().end()) {
    if (wi == w.entries().end() ||
        (vi != v.entries().end() && vi->first < wi->first)) {
      push(vi->first, a * vi->second);
      ++vi;
    } else if (vi == v.entries().end() || wi->first < vi->first) {
      push(wi->first, wi->second);
      ++wi;
    } else {
      push(vi->first, a * vi->second + wi->second);
      ++vi;
      ++wi;
    }
  }
  return out;
}

SeqVec scale(double a, const SeqVec& v) {
  SeqVec out;
  out.cap_ = v.cap();
  out.entries_.reserve(v.entries().size());
  for (const auto& [i, x] : v.entries())
    if (a * x != 0.0) out.entries_.emplace_back(i, a * x);
  return out;
}

SeqVec direction(const SeqVec& v, NormKind kind) {
  const double n = norm(v, kind);
  if (n == 0.0)
    throw std::invalid_argument("direction: zero vector has no direction");
  return scale(1.0 / n, v);
}

}  // namespace trunclab
