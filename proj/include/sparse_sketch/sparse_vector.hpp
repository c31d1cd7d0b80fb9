#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparse_sketch/norm.hpp"

namespace sparse_sketch {

using Index = std::uint64_t;

// Largest supported ambient dimension.
inline constexpr Index kMaxDimension = Index{1} << 62;

struct Entry {
  Index index;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// A vector over a (possibly astronomically large) ambient dimension d that
// stores only its non-zero coordinates, sorted by index.
//
// Construction canonicalizes: entries are sorted, explicit zeros dropped.
// Duplicate indices, indices >= d and non-finite values are rejected with
// std::invalid_argument.
class SparseVector {
 public:
  explicit SparseVector(Index dim = kMaxDimension);
  SparseVector(Index dim, std::vector<Entry> entries);

  Index dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  // Value at index j (0 when j is not in the support).
  double at(Index j) const;
  // True iff every stored value is > 0 (vacuously true for the zero vector).
  bool non_negative() const;

  SparseVector scaled(double factor) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Index dim_;
  std::vector<Entry> entries_;
};

// (sum_i |x_i|^p)^(1/p), or max_i |x_i| for l_inf. Zero for the empty vector.
double lp_norm(const SparseVector& x, Norm norm);
// sum_i |x_i|^p; for l_inf returns the l_inf norm.
double lp_norm_pow(const SparseVector& x, Norm norm);
double lp_dist(const SparseVector& x, const SparseVector& y, Norm norm);
double lp_dist_pow(const SparseVector& x, const SparseVector& y, Norm norm);

SparseVector sum_vectors(const SparseVector& x, const SparseVector& y);
SparseVector diff_vectors(const SparseVector& x, const SparseVector& y);

// Dense counterparts for embedded outputs.
double lp_norm(std::span<const double> v, Norm norm);
double lp_dist(std::span<const double> a, std::span<const double> b, Norm norm);
double lp_dist_pow(std::span<const double> a, std::span<const double> b, Norm norm);

}  // namespace sparse_sketch
