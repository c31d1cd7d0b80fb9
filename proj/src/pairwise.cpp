#include "sparse_sketch/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparse_sketch {
namespace {

struct CompactEntry {
  std::uint32_t coord;
  double value;
};

struct GroupValue {
  std::uint64_t key;  // copy * m + bucket
  double value;       // max of the vector's support values in the group
};

}  // namespace

PairwiseSketchDistances::PairwiseSketchDistances(const StackedEmbedding& F, const Dataset& data,
                                                 std::vector<Norm> norms)
    : n_(data.size()), copies_(F.copies()), norms_(std::move(norms)) {
  const std::uint64_t m = F.buckets_per_copy();

  std::vector<Index> coords;
  for (const auto& item : data.items()) {
    for (const auto& e : item.vector.entries()) coords.push_back(e.index);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  std::vector<std::vector<CompactEntry>> support(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (const auto& e : data.vector(i).entries()) {
      const auto c = std::lower_bound(coords.begin(), coords.end(), e.index) - coords.begin();
      support[i].push_back({static_cast<std::uint32_t>(c), e.value});
    }
  }

  // alone[c]: number of copies in which coordinate c is the only dataset
  // coordinate of its bucket.
  std::vector<std::uint64_t> alone(coords.size(), 0);
  std::vector<std::vector<GroupValue>> groups(n_);
  std::vector<std::uint64_t> bucket_of(coords.size());
  std::vector<char> shared(coords.size());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> order(coords.size());
  std::vector<std::pair<std::uint64_t, double>> landed;

  for (std::uint64_t k = 0; k < copies_; ++k) {
    const MaxHashMap& map = F.copy(k);
    for (std::size_t c = 0; c < coords.size(); ++c) {
      bucket_of[c] = map.bucket(coords[c]);
      order[c] = {bucket_of[c], static_cast<std::uint32_t>(c)};
    }
    std::sort(order.begin(), order.end());
    for (std::size_t r = 0; r < order.size(); ++r) {
      const bool same_prev = r > 0 && order[r - 1].first == order[r].first;
      const bool same_next = r + 1 < order.size() && order[r + 1].first == order[r].first;
      shared[order[r].second] = same_prev || same_next;
      if (!shared[order[r].second]) ++alone[order[r].second];
    }
    for (std::size_t i = 0; i < n_; ++i) {
      landed.clear();
      for (const auto& e : support[i]) {
        if (shared[e.coord]) landed.emplace_back(bucket_of[e.coord], e.value);
      }
      if (landed.empty()) continue;
      std::sort(landed.begin(), landed.end());
      for (std::size_t r = 0; r < landed.size(); ++r) {
        if (r + 1 < landed.size() && landed[r + 1].first == landed[r].first) continue;
        // Sorted ascending, so the last entry of a bucket run is its max.
        groups[i].push_back({k * m + landed[r].first, landed[r].second});
      }
    }
  }

  raw_.assign(norms_.size(), std::vector<double>(n_ * n_, 0.0));
  std::vector<double> acc(norms_.size());
  auto add = [&](double diff, double weight) {
    for (std::size_t q = 0; q < norms_.size(); ++q) {
      if (norms_[q].is_infinite()) {
        acc[q] = std::max(acc[q], std::fabs(diff));
      } else {
        acc[q] += weight * pow_abs(diff, norms_[q].p());
      }
    }
  };

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      std::fill(acc.begin(), acc.end(), 0.0);
      // Coordinates alone in their bucket contribute exactly.
      const auto& a = support[i];
      const auto& b = support[j];
      std::size_t u = 0, v = 0;
      while (u < a.size() || v < b.size()) {
        std::uint32_t c;
        double diff;
        if (v == b.size() || (u < a.size() && a[u].coord < b[v].coord)) {
          c = a[u].coord;
          diff = a[u++].value;
        } else if (u == a.size() || b[v].coord < a[u].coord) {
          c = b[v].coord;
          diff = b[v++].value;
        } else {
          c = a[u].coord;
          diff = a[u++].value - b[v++].value;
        }
        if (alone[c] > 0) add(diff, static_cast<double>(alone[c]));
      }
      // Shared buckets follow the max rule.
      const auto& ga = groups[i];
      const auto& gb = groups[j];
      u = v = 0;
      while (u < ga.size() || v < gb.size()) {
        if (v == gb.size() || (u < ga.size() && ga[u].key < gb[v].key)) {
          add(ga[u++].value, 1.0);
        } else if (u == ga.size() || gb[v].key < ga[u].key) {
          add(gb[v++].value, 1.0);
        } else {
          add(ga[u++].value - gb[v++].value, 1.0);
        }
      }
      for (std::size_t q = 0; q < norms_.size(); ++q) {
        raw_[q][i * n_ + j] = acc[q];
        raw_[q][j * n_ + i] = acc[q];
      }
    }
  }
}

double PairwiseSketchDistances::estimate(std::size_t norm_index, std::size_t i, std::size_t j) const {
  const Norm norm = norms_.at(norm_index);
  const double r = raw(norm_index, i, j);
  if (norm.is_infinite()) return r;
  const double per_copy = r / static_cast<double>(copies_);
  return norm.p() == 1.0 ? per_copy : std::pow(per_copy, 1.0 / norm.p());
}

}  // namespace sparse_sketch
