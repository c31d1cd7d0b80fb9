#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "sparse_sketch/dataset.hpp"
#include "sparse_sketch/embeddings.hpp"

namespace sparse_sketch {

struct QueryStats {
  std::uint64_t coefficients_touched = 0;
};

// Answers sum_{x in X} ||x - y||_p^p for even p from a compact summary of X.
//
// Each of R = ceil(8 ln n) repetitions draws a max-hash map f_j with
// m = ceil(200 s / eps^2) buckets and stores, for every bucket i and
// k = 0..p, the coefficient c[i][k] = sum_x f_j(x)_i^(p-k) with 0^0 = 1, so
// c[i][p] = n. Since p is even,
//   sum_x ||f_j(x) - z||_p^p = sum_i sum_k binom(p, k) (-z_i)^k c[i][k],
// a polynomial in z = f_j(y) with (p + 1) m coefficients. A query returns
// the lower median of the R repetition values.
class DistanceEstimator {
 public:
  // Throws std::invalid_argument for odd or < 2 p, eps outside (0, 1),
  // an empty or signed dataset.
  static DistanceEstimator build(const Dataset& data, int p, double eps, std::uint64_t seed);

  // Throws std::invalid_argument on dimension mismatch or negative entries.
  double query(const SparseVector& y, QueryStats* stats = nullptr) const;
  std::vector<double> repetition_values(const SparseVector& y, QueryStats* stats = nullptr) const;

  int p() const { return p_; }
  double eps() const { return eps_; }
  std::size_t repetitions() const { return maps_.size(); }
  std::uint64_t buckets() const { return m_; }
  std::size_t dataset_size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  Index dim() const { return dim_; }
  const MaxHashMap& map(std::size_t rep) const { return maps_[rep]; }
  double coefficient(std::size_t rep, std::uint64_t bucket, int k) const {
    return table_[(rep * m_ + bucket) * static_cast<std::size_t>(p_ + 1) + static_cast<std::size_t>(k)];
  }

  // {p, eps, R, seed, m, n, d, tables: [[[c]]]}, tables[rep][bucket][k].
  nlohmann::json to_json() const;
  static DistanceEstimator from_json(const nlohmann::json& j);

 private:
  DistanceEstimator(int p, double eps, std::uint64_t seed, std::uint64_t m, std::size_t reps, std::size_t n, Index dim);

  int p_;
  double eps_;
  std::uint64_t seed_;
  std::uint64_t m_;
  std::size_t n_;
  Index dim_;
  std::vector<MaxHashMap> maps_;
  std::vector<double> table_;
  std::vector<double> binomials_;
};

}  // namespace sparse_sketch
