#include "sparse_sketch/apps/distance_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparse_sketch {

DistanceEstimator::DistanceEstimator(int p, double eps, std::uint64_t seed, std::uint64_t m, std::size_t reps,
                                     std::size_t n, Index dim)
    : p_(p), eps_(eps), seed_(seed), m_(m), n_(n), dim_(dim) {
  maps_.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) maps_.emplace_back(HashSpec{seed, r, m});
  table_.assign(reps * m * static_cast<std::size_t>(p + 1), 0.0);
  // binom(p, k) (-1)^k
  binomials_.assign(static_cast<std::size_t>(p + 1), 1.0);
  for (int k = 1; k <= p; ++k) binomials_[k] = binomials_[k - 1] * (p - k + 1) / k;
  for (int k = 1; k <= p; k += 2) binomials_[k] = -binomials_[k];
}

DistanceEstimator DistanceEstimator::build(const Dataset& data, int p, double eps, std::uint64_t seed) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("distance estimation needs an even p >= 2");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (data.empty()) throw std::invalid_argument("distance estimation needs a non-empty dataset");
  if (!data.non_negative()) throw std::invalid_argument("distance estimation requires non-negative vectors");

  const std::size_t n = data.size();
  const double s = static_cast<double>(std::max<std::size_t>(data.max_sparsity(), 1));
  const auto reps = static_cast<std::size_t>(std::max(1.0, std::ceil(8.0 * std::log(static_cast<double>(n)))));
  const auto m = static_cast<std::uint64_t>(std::ceil(200.0 * s / (eps * eps)));
  DistanceEstimator est(p, eps, seed, m, reps, n, data.dim());

  const auto width = static_cast<std::size_t>(p + 1);
  for (std::size_t r = 0; r < reps; ++r) {
    double* rep_table = est.table_.data() + r * m * width;
    // 0^0 = 1: every point contributes 1 to c[i][p] of every bucket.
    for (std::uint64_t i = 0; i < m; ++i) rep_table[i * width + p] = static_cast<double>(n);
    for (const auto& item : data.items()) {
      for (const auto& b : est.maps_[r].embed_sparse(item.vector)) {
        double* row = rep_table + b.bucket * width;
        // c[i][k] += a^(p-k) for k < p.
        double power = b.value;
        for (int k = p - 1; k >= 0; --k) {
          row[k] += power;
          power *= b.value;
        }
      }
    }
  }
  return est;
}

std::vector<double> DistanceEstimator::repetition_values(const SparseVector& y, QueryStats* stats) const {
  if (y.dim() != dim_) throw std::invalid_argument("query dimension does not match the dataset");
  if (!y.non_negative()) throw std::invalid_argument("queries must be non-negative");
  const auto width = static_cast<std::size_t>(p_ + 1);
  std::vector<double> values;
  values.reserve(maps_.size());
  std::vector<double> z(m_);
  for (std::size_t r = 0; r < maps_.size(); ++r) {
    maps_[r].embed_into(y, z);
    const double* rep_table = table_.data() + r * m_ * width;
    double total = 0.0;
    for (std::uint64_t i = 0; i < m_; ++i) {
      const double* row = rep_table + i * width;
      double z_power = 1.0;
      double bucket = 0.0;
      for (std::size_t k = 0; k < width; ++k) {
        bucket += binomials_[k] * z_power * row[k];
        z_power *= z[i];
      }
      total += bucket;
    }
    if (stats) stats->coefficients_touched += m_ * width;
    values.push_back(total);
  }
  return values;
}

double DistanceEstimator::query(const SparseVector& y, QueryStats* stats) const {
  auto values = repetition_values(y, stats);
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

nlohmann::json DistanceEstimator::to_json() const {
  nlohmann::json tables = nlohmann::json::array();
  const auto width = static_cast<std::size_t>(p_ + 1);
  for (std::size_t r = 0; r < maps_.size(); ++r) {
    nlohmann::json rep = nlohmann::json::array();
    for (std::uint64_t i = 0; i < m_; ++i) {
      const double* row = table_.data() + (r * m_ + i) * width;
      rep.push_back(std::vector<double>(row, row + width));
    }
    tables.push_back(std::move(rep));
  }
  return {{"p", p_}, {"eps", eps_}, {"R", maps_.size()}, {"seed", seed_}, {"m", m_},
          {"n", n_}, {"d", dim_}, {"tables", std::move(tables)}};
}

DistanceEstimator DistanceEstimator::from_json(const nlohmann::json& j) {
  try {
    const int p = j.at("p").get<int>();
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("distance estimation needs an even p >= 2");
    const auto reps = j.at("R").get<std::size_t>();
    const auto m = j.at("m").get<std::uint64_t>();
    DistanceEstimator est(p, j.at("eps").get<double>(), j.at("seed").get<std::uint64_t>(), m, reps,
                          j.at("n").get<std::size_t>(), j.at("d").get<Index>());
    const auto& tables = j.at("tables");
    const auto width = static_cast<std::size_t>(p + 1);
    if (tables.size() != reps) throw std::invalid_argument("table count does not match R");
    for (std::size_t r = 0; r < reps; ++r) {
      if (tables[r].size() != m) throw std::invalid_argument("bucket count does not match m");
      for (std::uint64_t i = 0; i < m; ++i) {
        const auto row = tables[r][i].get<std::vector<double>>();
        if (row.size() != width) throw std::invalid_argument("coefficient row must have p + 1 entries");
        std::copy(row.begin(), row.end(), est.table_.begin() + static_cast<std::ptrdiff_t>((r * m + i) * width));
      }
    }
    return est;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed estimator: ") + e.what());
  }
}

}  // namespace sparse_sketch
