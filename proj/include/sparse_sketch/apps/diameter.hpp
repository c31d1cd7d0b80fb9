#pragma once

#include <cstdint>
#include <vector>

#include "sparse_sketch/dataset.hpp"
#include "sparse_sketch/embeddings.hpp"

namespace sparse_sketch {

// max over pairs of ||x - y||_p by exhaustive scan. Needs n >= 2.
double diameter_exact(const Dataset& data, Norm norm);

// One-pass l_inf diameter of non-negative s-sparse vectors. Each vector is
// hashed to m = 100 s buckets with a max-hash map and only the running
// per-bucket maximum and minimum are kept, so memory is O(s) words and the
// answer never exceeds the true l_inf diameter.
class LinfDiameterStream {
 public:
  static constexpr double kBucketsPerSparsity = 100.0;

  LinfDiameterStream(std::size_t s, std::uint64_t seed);

  // Throws std::invalid_argument for negative entries or a dimension change.
  void push(const SparseVector& x);
  double value() const;

  std::size_t count() const { return count_; }
  std::uint64_t buckets() const { return map_.output_dim(); }
  // Words of state held between pushes.
  std::size_t memory_words() const { return high_.size() + low_.size() + landed_.size(); }

 private:
  MaxHashMap map_;
  std::vector<double> high_;
  std::vector<double> low_;
  std::vector<std::uint64_t> landed_;
  std::size_t count_ = 0;
  Index dim_ = 0;
};

double diameter_linf_stream(const Dataset& data, std::size_t s, std::uint64_t seed);

// Largest projected dimension whose 2^k sign patterns are enumerated.
inline constexpr std::size_t kMaxL1ProjectedDim = 24;

// Default projected dimension for l1 diameter: min(4 s, 20).
std::size_t default_l1_projected_dim(std::size_t s);

// l1 diameter of non-negative vectors: project to k dimensions with a
// max-hash map, then walk all sign patterns in Gray-code order and take the
// l_inf spread of each pattern's projections (l1 in k dimensions embeds
// isometrically into l_inf over the 2^k sign rows). Memory beyond the
// projected points is O(k). Never exceeds the true l1 diameter. k = 0 picks
// default_l1_projected_dim(s); k > kMaxL1ProjectedDim is rejected.
double diameter_l1(const Dataset& data, std::size_t s, std::uint64_t seed, std::size_t k = 0);

// l1 diameter of dense points by the sign-pattern isometry (the projected
// step of diameter_l1, exposed for testing).
double l1_diameter_by_sign_patterns(const std::vector<std::vector<double>>& points);

}  // namespace sparse_sketch
