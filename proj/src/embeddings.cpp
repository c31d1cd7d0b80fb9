#include "sparse_sketch/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparse_sketch {
namespace {

// Accumulates either a p-th power sum or a maximum of |differences|.
struct DistanceAccumulator {
  Norm norm;
  double total = 0.0;

  void add(double diff) {
    if (norm.is_infinite()) {
      total = std::max(total, std::fabs(diff));
    } else {
      total += pow_abs(diff, norm.p());
    }
  }
};

void accumulate_sparse_diff(const std::vector<BucketValue>& a, const std::vector<BucketValue>& b,
                            DistanceAccumulator& acc) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].bucket < b[j].bucket)) {
      acc.add(a[i++].value);
    } else if (i == a.size() || b[j].bucket < a[i].bucket) {
      acc.add(b[j++].value);
    } else {
      acc.add(a[i++].value - b[j++].value);
    }
  }
}

double normalize(double raw, Norm norm, std::uint64_t copies) {
  if (norm.is_infinite()) return raw;
  const double per_copy = raw / static_cast<double>(copies);
  return norm.p() == 1.0 ? per_copy : std::pow(per_copy, 1.0 / norm.p());
}

}  // namespace

std::vector<double> BirthdayMap::embed(const SparseVector& x) const {
  std::vector<double> out(output_dim(), 0.0);
  for (const auto& e : x.entries()) out[hasher_(e.index)] += e.value;
  return out;
}

std::vector<double> MaxHashMap::embed(const SparseVector& x) const {
  std::vector<double> out(output_dim(), 0.0);
  embed_into(x, out);
  return out;
}

void MaxHashMap::embed_into(const SparseVector& x, std::span<double> out) const {
  if (out.size() != output_dim()) throw std::invalid_argument("output span has the wrong length");
  std::fill(out.begin(), out.end(), 0.0);
  // Stored values are non-zero, so 0 marks an untouched bucket.
  for (const auto& e : x.entries()) {
    double& slot = out[hasher_(e.index)];
    slot = (slot == 0.0) ? e.value : std::max(slot, e.value);
  }
}

std::vector<BucketValue> MaxHashMap::embed_sparse(const SparseVector& x) const {
  std::vector<BucketValue> landed;
  landed.reserve(x.nnz());
  for (const auto& e : x.entries()) landed.push_back({hasher_(e.index), e.value});
  std::sort(landed.begin(), landed.end(), [](const BucketValue& a, const BucketValue& b) {
    return a.bucket < b.bucket || (a.bucket == b.bucket && a.value > b.value);
  });
  // Keep the first (largest) value of every bucket.
  auto last = std::unique(landed.begin(), landed.end(),
                          [](const BucketValue& a, const BucketValue& b) { return a.bucket == b.bucket; });
  landed.erase(last, landed.end());
  return landed;
}

double MaxHashMap::distance_pow(const SparseVector& x, const SparseVector& y, Norm norm) const {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  DistanceAccumulator acc{norm};
  accumulate_sparse_diff(embed_sparse(x), embed_sparse(y), acc);
  return acc.total;
}

StackedEmbedding::StackedEmbedding(const EmbedParams& params) : params_(params) {
  if (params.m < 1 || params.T < 1) throw std::invalid_argument("m and T must be >= 1");
  maps_.reserve(params.T);
  for (std::uint64_t k = 0; k < params.T; ++k) maps_.emplace_back(HashSpec{params.seed, k, params.m});
}

std::vector<double> StackedEmbedding::embed(const SparseVector& x) const {
  std::vector<double> out(output_dim(), 0.0);
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    maps_[k].embed_into(x, std::span<double>(out).subspan(k * params_.m, params_.m));
  }
  return out;
}

double StackedEmbedding::distance_pow_sum(const SparseVector& x, const SparseVector& y, Norm norm) const {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  double total = 0.0;
  for (const auto& map : maps_) {
    const double part = map.distance_pow(x, y, norm);
    total = norm.is_infinite() ? std::max(total, part) : total + part;
  }
  return total;
}

Embedded embed_tagged(const StackedEmbedding& F, const SparseVector& x) { return {F.params(), F.embed(x)}; }

double estimate_distance(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y, Norm norm) {
  return normalize(F.distance_pow_sum(x, y, norm), norm, F.copies());
}

double estimate_distance(const Embedded& a, const Embedded& b, Norm norm) {
  if (!(a.params == b.params)) throw std::invalid_argument("embeddings were produced with different parameters");
  if (a.values.size() != b.values.size() || a.values.size() != a.params.m * a.params.T) {
    throw std::invalid_argument("embedding length does not match its parameters");
  }
  return normalize(lp_dist_pow(a.values, b.values, norm), norm, a.params.T);
}

double estimate_sum_norm(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y) {
  if (F.params().m != 1 || F.params().T != 1) throw std::invalid_argument("sum estimate needs m = T = 1");
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  if (!x.non_negative() || !y.non_negative()) throw std::invalid_argument("sum estimate requires non-negative inputs");
  const auto fx = F.embed(x);
  const auto fy = F.embed(y);
  return fx[0] + fy[0];
}

double estimate_sum_lp(const StackedEmbedding& F, const SparseVector& x, const SparseVector& y, Norm norm) {
  if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k < F.copies(); ++k) {
    const auto a = F.copy(k).embed_sparse(x);
    const auto b = F.copy(k).embed_sparse(y);
    // Merge with addition instead of subtraction.
    std::vector<BucketValue> neg_b(b);
    for (auto& v : neg_b) v.value = -v.value;
    DistanceAccumulator acc{norm};
    accumulate_sparse_diff(a, neg_b, acc);
    total = norm.is_infinite() ? std::max(total, acc.total) : total + acc.total;
  }
  return normalize(total, norm, F.copies());
}

}  // namespace sparse_sketch
