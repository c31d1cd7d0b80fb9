#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparse_sketch/hashing.hpp"
#include "sparse_sketch/params.hpp"
#include "sparse_sketch/sparse_vector.hpp"

namespace sparse_sketch {

// Value of one non-empty output bucket.
struct BucketValue {
  std::uint64_t bucket;
  double value;
};

// Hash-and-sum linear map to m buckets (the birthday-paradox map).
class BirthdayMap {
 public:
  explicit BirthdayMap(const HashSpec& spec) : spec_(spec), hasher_(spec) {}

  const HashSpec& spec() const { return spec_; }
  std::uint64_t output_dim() const { return hasher_.buckets(); }
  std::uint64_t bucket(Index j) const { return hasher_(j); }

  std::vector<double> embed(const SparseVector& x) const;
  std::vector<double> apply(const SparseVector& x) const { return embed(x); }

 private:
  HashSpec spec_;
  BucketHasher hasher_;
};

// Hash-and-max map to m buckets. Bucket b holds the largest support value of
// x that hashes to b, or 0 when no support coordinate lands there.
//
// For non-negative inputs the map never expands any l_p distance and is
// exact whenever h is injective on the union of the two supports. Signed
// inputs are accepted but carry no guarantee: with x = -e_0, y = e_1 and
// h(0) = h(1) the l_inf distance doubles.
class MaxHashMap {
 public:
  explicit MaxHashMap(const HashSpec& spec) : spec_(spec), hasher_(spec) {}

  const HashSpec& spec() const { return spec_; }
  std::uint64_t output_dim() const { return hasher_.buckets(); }
  std::uint64_t bucket(Index j) const { return hasher_(j); }

  std::vector<double> embed(const SparseVector& x) const;
  // Writes the m outputs into out (out.size() must equal output_dim()).
  void embed_into(const SparseVector& x, std::span<double> out) const;
  // Non-empty buckets only, sorted by bucket.
  std::vector<BucketValue> embed_sparse(const SparseVector& x) const;

  // ||f(x) - f(y)||_p^p, or ||f(x) - f(y)||_inf, without materializing f.
  double distance_pow(const SparseVector& x, const SparseVector& y, Norm norm) const;

 private:
  HashSpec spec_;
  BucketHasher hasher_;
};

// Concatenation of T independent max-hash maps sharing a seed and differing
// only in copy index 0..T-1.
class StackedEmbedding {
 public:
  explicit StackedEmbedding(const EmbedParams& params);

  const EmbedParams& params() const { return params_; }
  std::size_t copies() const { return maps_.size(); }
  std::uint64_t buckets_per_copy() const { return params_.m; }
  std::uint64_t output_dim() const { return params_.m * params_.T; }
  const MaxHashMap& copy(std::size_t k) const { return maps_[k]; }

  std::vector<double> embed(const SparseVector& x) const;

  // sum_k ||f_k(x) - f_k(y)||_p^p for finite p; max_k ||f_k(x) - f_k(y)||_inf.
  double distance_pow_sum(const SparseVector& x, const SparseVector& y, Norm norm) const;

 private:
  EmbedParams params_;
  std::vector<MaxHashMap> maps_;
};

// An embedded vector tagged with the parameters that produced it.
struct Embedded {
  EmbedParams params;
  std::vector<double> values;
};

Embedded embed_tagged(const StackedEmbedding& F, const SparseVector& x);

// (||F(x) - F(y)||_p^p / T)^(1/p) for finite p and ||F(x) - F(y)||_inf for
// l_inf. For non-negative inputs never exceeds lp_dist(x, y).
double estimate_distance(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y, Norm norm);
// Same estimate from precomputed embeddings; throws std::invalid_argument
// when the two were produced under different parameters or seeds.
double estimate_distance(const Embedded& a, const Embedded& b, Norm norm);

// F(x) + F(y) for a one-coordinate embedding (m = T = 1). Lies in
// [||x+y||_inf, 2 ||x+y||_inf] for non-negative x, y; negative entries are
// rejected with std::invalid_argument.
double estimate_sum_norm(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y);

// (||F(x) + F(y)||_p^p / T)^(1/p), the sum estimate for the sum-lp mode.
double estimate_sum_lp(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y, Norm norm);

}  // namespace sparse_sketch
