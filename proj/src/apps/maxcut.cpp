#include "sparse_sketch/apps/maxcut.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparse_sketch {

std::vector<double> cut_weights(const Dataset& data, Norm norm) {
  if (norm.is_infinite()) throw std::invalid_argument("max-cut weights need a finite p");
  const std::size_t n = data.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w[i * n + j] = w[j * n + i] = lp_dist_pow(data.vector(i), data.vector(j), norm);
  }
  return w;
}

double cut_value(const std::vector<double>& weights, const std::vector<bool>& side) {
  const std::size_t n = side.size();
  if (weights.size() != n * n) throw std::invalid_argument("weight matrix does not match the partition size");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (side[i] != side[j]) total += weights[i * n + j];
    }
  }
  return total;
}

CutResult maxcut_brute(const std::vector<double>& weights, std::size_t n) {
  if (n > kMaxCutBruteForceLimit) {
    throw std::invalid_argument("brute-force max-cut supports at most " + std::to_string(kMaxCutBruteForceLimit) +
                                " points, got " + std::to_string(n));
  }
  if (weights.size() != n * n) throw std::invalid_argument("weight matrix must be n x n");
  CutResult result{0.0, std::vector<bool>(n, false)};
  if (n < 2) return result;

  // The last point stays outside S; the other n-1 memberships follow a Gray code.
  std::vector<bool> side(n, false);
  double current = 0.0;
  double best = 0.0;
  std::uint64_t gray = 0, best_mask = 0;
  const std::uint64_t masks = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 1; step < masks; ++step) {
    const auto v = static_cast<std::size_t>(std::countr_zero(step));
    double same = 0.0, other = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      (side[u] == side[v] ? same : other) += weights[v * n + u];
    }
    current += same - other;
    side[v] = !side[v];
    gray ^= std::uint64_t{1} << v;
    if (current > best) {
      best = current;
      best_mask = gray;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) result.side[i] = (best_mask >> i) & 1;
  result.value = cut_value(weights, result.side);
  return result;
}

CutResult maxcut_brute(const Dataset& data, Norm norm) {
  if (data.size() > kMaxCutBruteForceLimit) {
    throw std::invalid_argument("brute-force max-cut supports at most " + std::to_string(kMaxCutBruteForceLimit) + " points");
  }
  return maxcut_brute(cut_weights(data, norm), data.size());
}

SketchedCut maxcut_sketched(const Dataset& data, Norm norm, double eps, std::uint64_t seed,
                            std::uint64_t bucket_override) {
  if (norm.is_infinite()) throw std::invalid_argument("max-cut needs a finite p");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!data.non_negative()) throw std::invalid_argument("sketched max-cut requires non-negative vectors");
  if (data.size() > kMaxCutBruteForceLimit) {
    throw std::invalid_argument("brute-force max-cut supports at most " + std::to_string(kMaxCutBruteForceLimit) + " points");
  }
  const double s = static_cast<double>(std::max<std::size_t>(data.max_sparsity(), 1));
  SketchedCut out;
  out.buckets = bucket_override > 0 ? bucket_override : static_cast<std::uint64_t>(std::ceil(200.0 * s / (eps * eps)));
  const MaxHashMap map(HashSpec{seed, 0, out.buckets});
  const std::size_t n = data.size();
  out.weights.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.weights[i * n + j] = out.weights[j * n + i] = map.distance_pow(data.vector(i), data.vector(j), norm);
    }
  }
  out.cut = maxcut_brute(out.weights, n);
  return out;
}

}  // namespace sparse_sketch
