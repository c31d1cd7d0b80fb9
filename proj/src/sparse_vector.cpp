#include "sparse_sketch/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparse_sketch {
namespace {

// Above this exponent the power sum is computed relative to the largest
// magnitude so that |x|^p neither overflows nor underflows.
constexpr double kScaledExponent = 16.0;

template <class Values>
double norm_from_values(const Values& values, Norm norm) {
  double largest = 0.0;
  for (double v : values) largest = std::max(largest, std::fabs(v));
  if (norm.is_infinite() || largest == 0.0) return largest;
  const double p = norm.p();
  double sum = 0.0;
  if (p <= kScaledExponent) {
    for (double v : values) sum += pow_abs(v, p);
    return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
  }
  for (double v : values) sum += pow_abs(v / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

template <class Values>
double pow_from_values(const Values& values, Norm norm) {
  if (norm.is_infinite()) return norm_from_values(values, norm);
  double sum = 0.0;
  for (double v : values) sum += pow_abs(v, norm.p());
  return sum;
}

// Iterates the values of the entries of a sparse vector.
struct SparseValues {
  std::span<const Entry> entries;

  struct iterator {
    const Entry* it;
    double operator*() const { return it->value; }
    iterator& operator++() {
      ++it;
      return *this;
    }
    bool operator!=(const iterator& other) const { return it != other.it; }
  };
  iterator begin() const { return {entries.data()}; }
  iterator end() const { return {entries.data() + entries.size()}; }
};

void check_same_dim(const SparseVector& x, const SparseVector& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                                std::to_string(y.dim()));
  }
}

// Merges the supports of x and y, combining coincident values with op.
template <class Op>
std::vector<Entry> merge(const SparseVector& x, const SparseVector& y, Op op) {
  const auto a = x.entries();
  const auto b = y.entries();
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double v;
    Index idx;
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      idx = a[i].index;
      v = op(a[i++].value, 0.0);
    } else if (i == a.size() || b[j].index < a[i].index) {
      idx = b[j].index;
      v = op(0.0, b[j++].value);
    } else {
      idx = a[i].index;
      v = op(a[i++].value, b[j++].value);
    }
    if (v != 0.0) out.push_back({idx, v});
  }
  return out;
}

}  // namespace

SparseVector::SparseVector(Index dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDimension) throw std::invalid_argument("ambient dimension must be in [1, 2^62]");
}

SparseVector::SparseVector(Index dim, std::vector<Entry> entries) : SparseVector(dim) {
  std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].index >= dim) {
      throw std::invalid_argument("index " + std::to_string(entries[k].index) + " out of range for dimension " +
                                  std::to_string(dim));
    }
    if (!std::isfinite(entries[k].value)) throw std::invalid_argument("non-finite value at index " + std::to_string(entries[k].index));
    if (k > 0 && entries[k].index == entries[k - 1].index) {
      throw std::invalid_argument("duplicate index " + std::to_string(entries[k].index));
    }
  }
  entries_ = std::move(entries);
}

double SparseVector::at(Index j) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), j, [](const Entry& e, Index k) { return e.index < k; });
  return (it != entries_.end() && it->index == j) ? it->value : 0.0;
}

bool SparseVector::non_negative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.value > 0.0; });
}

SparseVector SparseVector::scaled(double factor) const {
  std::vector<Entry> out(entries_);
  for (auto& e : out) e.value *= factor;
  return SparseVector(dim_, std::move(out));
}

double lp_norm(const SparseVector& x, Norm norm) { return norm_from_values(SparseValues{x.entries()}, norm); }

double lp_norm_pow(const SparseVector& x, Norm norm) { return pow_from_values(SparseValues{x.entries()}, norm); }

double lp_dist(const SparseVector& x, const SparseVector& y, Norm norm) { return lp_norm(diff_vectors(x, y), norm); }

double lp_dist_pow(const SparseVector& x, const SparseVector& y, Norm norm) {
  return lp_norm_pow(diff_vectors(x, y), norm);
}

SparseVector sum_vectors(const SparseVector& x, const SparseVector& y) {
  check_same_dim(x, y);
  return SparseVector(x.dim(), merge(x, y, [](double a, double b) { return a + b; }));
}

SparseVector diff_vectors(const SparseVector& x, const SparseVector& y) {
  check_same_dim(x, y);
  return SparseVector(x.dim(), merge(x, y, [](double a, double b) { return a - b; }));
}

double lp_norm(std::span<const double> v, Norm norm) { return norm_from_values(v, norm); }

double lp_dist(std::span<const double> a, std::span<const double> b, Norm norm) {
  if (a.size() != b.size()) throw std::invalid_argument("dense length mismatch");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm_from_values(d, norm);
}

double lp_dist_pow(std::span<const double> a, std::span<const double> b, Norm norm) {
  if (a.size() != b.size()) throw std::invalid_argument("dense length mismatch");
  if (norm.is_infinite()) return lp_dist(a, b, norm);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += pow_abs(a[i] - b[i], norm.p());
  return sum;
}

}  // namespace sparse_sketch
