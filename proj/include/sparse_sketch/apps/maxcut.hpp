#pragma once

#include <cstdint>
#include <vector>

#include "sparse_sketch/dataset.hpp"
#include "sparse_sketch/embeddings.hpp"

namespace sparse_sketch {

inline constexpr std::size_t kMaxCutBruteForceLimit = 22;

struct CutResult {
  double value = 0.0;
  std::vector<bool> side;  // side[i] == true puts point i in S
};

// Symmetric n x n matrix of ||x_i - x_j||_p^p. Finite p only.
std::vector<double> cut_weights(const Dataset& data, Norm norm);

// Sum of weights crossing the bipartition.
double cut_value(const std::vector<double>& weights, const std::vector<bool>& side);

// Exact maximum cut by enumerating the 2^(n-1) bipartitions in Gray-code
// order. Throws std::invalid_argument for n > kMaxCutBruteForceLimit or
// inconsistent weights.
CutResult maxcut_brute(const std::vector<double>& weights, std::size_t n);
CutResult maxcut_brute(const Dataset& data, Norm norm);

struct SketchedCut {
  CutResult cut;                 // optimum in the projected space
  std::uint64_t buckets = 0;     // m = ceil(200 s / eps^2)
  std::vector<double> weights;   // projected pairwise weights
};

// Projects the non-negative dataset with one max-hash map of m = ceil(200 s /
// eps^2) buckets and solves max-cut exactly there. Every projected cut is at
// most the corresponding original cut, so the value never exceeds the true
// optimum. bucket_override > 0 replaces m.
SketchedCut maxcut_sketched(const Dataset& data, Norm norm, double eps, std::uint64_t seed,
                            std::uint64_t bucket_override = 0);

}  // namespace sparse_sketch
