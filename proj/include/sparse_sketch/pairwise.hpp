#pragma once

#include <cstddef>
#include <vector>

#include "sparse_sketch/dataset.hpp"
#include "sparse_sketch/embeddings.hpp"

namespace sparse_sketch {

// All pairwise distances of a dataset under a stacked embedding, for several
// norms at once, without materializing any m*T-dimensional output.
//
// Per copy, every coordinate occurring in the dataset either owns its bucket
// (then its contribution to any pair is the exact |x_j - y_j|^p) or shares
// it with other dataset coordinates (a "group", evaluated with the max
// rule). Only groups are tracked per vector, so the cost is dominated by
// hashing the distinct coordinates once per copy. Results agree with
// StackedEmbedding::distance_pow_sum up to summation order.
class PairwiseSketchDistances {
 public:
  PairwiseSketchDistances(const StackedEmbedding& F, const Dataset& data, std::vector<Norm> norms);

  std::size_t size() const { return n_; }
  const std::vector<Norm>& norms() const { return norms_; }

  // sum_k ||f_k(x_i) - f_k(x_j)||_p^p for finite p, the max over copies for l_inf.
  double raw(std::size_t norm_index, std::size_t i, std::size_t j) const {
    return raw_[norm_index][i * n_ + j];
  }
  // Normalized as estimate_distance does.
  double estimate(std::size_t norm_index, std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::uint64_t copies_;
  std::vector<Norm> norms_;
  std::vector<std::vector<double>> raw_;
};

}  // namespace sparse_sketch
