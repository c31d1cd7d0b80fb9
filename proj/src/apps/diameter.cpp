#include "sparse_sketch/apps/diameter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparse_sketch {

double diameter_exact(const Dataset& data, Norm norm) {
  if (data.size() < 2) throw std::invalid_argument("diameter needs at least two points");
  double best = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) best = std::max(best, lp_dist(data.vector(i), data.vector(j), norm));
  }
  return best;
}

LinfDiameterStream::LinfDiameterStream(std::size_t s, std::uint64_t seed)
    : map_(HashSpec{seed, 0, static_cast<std::uint64_t>(std::ceil(kBucketsPerSparsity * std::max<std::size_t>(s, 1)))}),
      high_(map_.output_dim(), 0.0),
      low_(map_.output_dim(), 0.0),
      landed_(map_.output_dim(), 0) {}

void LinfDiameterStream::push(const SparseVector& x) {
  if (!x.non_negative()) throw std::invalid_argument("l_inf diameter stream requires non-negative vectors");
  if (count_ > 0 && x.dim() != dim_) throw std::invalid_argument("dimension changed within the stream");
  dim_ = x.dim();
  for (const auto& b : map_.embed_sparse(x)) {
    if (landed_[b.bucket] == 0) {
      high_[b.bucket] = low_[b.bucket] = b.value;
    } else {
      high_[b.bucket] = std::max(high_[b.bucket], b.value);
      low_[b.bucket] = std::min(low_[b.bucket], b.value);
    }
    ++landed_[b.bucket];
  }
  ++count_;
}

double LinfDiameterStream::value() const {
  double best = 0.0;
  for (std::size_t b = 0; b < high_.size(); ++b) {
    if (landed_[b] == 0) continue;
    // Points that missed bucket b sit at 0 there.
    const double lo = landed_[b] < count_ ? std::min(low_[b], 0.0) : low_[b];
    const double hi = landed_[b] < count_ ? std::max(high_[b], 0.0) : high_[b];
    best = std::max(best, hi - lo);
  }
  return best;
}

double diameter_linf_stream(const Dataset& data, std::size_t s, std::uint64_t seed) {
  LinfDiameterStream stream(s, seed);
  for (const auto& item : data.items()) stream.push(item.vector);
  return stream.value();
}

std::size_t default_l1_projected_dim(std::size_t s) { return std::min<std::size_t>(4 * std::max<std::size_t>(s, 1), 20); }

double l1_diameter_by_sign_patterns(const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) return 0.0;
  const std::size_t k = points.front().size();
  if (k == 0) return 0.0;
  if (k > kMaxL1ProjectedDim) throw std::invalid_argument("projected dimension exceeds the 2^k budget");
  const std::size_t n = points.size();

  // sigma_0 is fixed to +1: sigma and -sigma give the same spread.
  std::vector<double> signs(k, 1.0);
  std::vector<double> proj(n);
  auto project_all = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (std::size_t c = 0; c < k; ++c) v += signs[c] * points[i][c];
      proj[i] = v;
    }
  };
  auto spread = [&] {
    const auto [lo, hi] = std::minmax_element(proj.begin(), proj.end());
    return *hi - *lo;
  };
  // Columns with a non-zero entry, per coordinate, for incremental updates.
  std::vector<std::vector<std::size_t>> touching(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      if (points[i][c] != 0.0) touching[c].push_back(i);
    }
  }

  project_all();
  double best = spread();
  std::uint64_t best_pattern = 0, gray = 0;
  const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
  for (std::uint64_t step = 1; step < patterns; ++step) {
    const std::size_t flip = static_cast<std::size_t>(std::countr_zero(step)) + 1;
    gray ^= std::uint64_t{1} << (flip - 1);
    signs[flip] = -signs[flip];
    const double delta = 2.0 * signs[flip];
    for (std::size_t i : touching[flip]) proj[i] += delta * points[i][flip];
    const double value = spread();
    if (value > best) {
      best = value;
      best_pattern = gray;
    }
  }
  // Re-evaluate the winning pattern from scratch to shed accumulated rounding.
  for (std::size_t c = 1; c < k; ++c) signs[c] = ((best_pattern >> (c - 1)) & 1) ? -1.0 : 1.0;
  signs[0] = 1.0;
  project_all();
  return spread();
}

double diameter_l1(const Dataset& data, std::size_t s, std::uint64_t seed, std::size_t k) {
  if (!data.non_negative()) throw std::invalid_argument("l1 diameter sketch requires non-negative vectors");
  if (k == 0) k = default_l1_projected_dim(s);
  if (k > kMaxL1ProjectedDim) {
    throw std::invalid_argument("projected dimension " + std::to_string(k) + " exceeds the 2^" +
                                std::to_string(kMaxL1ProjectedDim) + " sign-pattern budget");
  }
  const MaxHashMap map(HashSpec{seed, 0, k});
  std::vector<std::vector<double>> points;
  points.reserve(data.size());
  for (const auto& item : data.items()) points.push_back(map.embed(item.vector));
  return l1_diameter_by_sign_patterns(points);
}

}  // namespace sparse_sketch
