#include "sparse_sketch/apps/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace sparse_sketch {
namespace {

using Members = std::vector<std::vector<std::size_t>>;

Members members_of(const Clustering& c, std::size_t n) {
  validate_clustering(c, n);
  Members members(c.k);
  for (std::size_t i = 0; i < n; ++i) members[c.assignment[i]].push_back(i);
  return members;
}

// Combines per-cluster costs as the objective prescribes.
double combine(Objective objective, const std::vector<double>& per_cluster) {
  if (objective == Objective::kCenter) return *std::max_element(per_cluster.begin(), per_cluster.end());
  double total = 0.0;
  for (double v : per_cluster) total += v;
  return total;
}

// Cost of one cluster around a fixed center, given member-to-center distances.
double cluster_cost(Objective objective, const std::vector<double>& distances) {
  double total = 0.0;
  for (double d : distances) {
    switch (objective) {
      case Objective::kMedian: total += d; break;
      case Objective::kMeans: total += d * d; break;
      case Objective::kCenter: total = std::max(total, d); break;
    }
  }
  return total;
}

// Values of every member on every coordinate of the cluster's union support
// (implicit zeros included).
std::map<Index, std::vector<double>> coordinate_columns(const Dataset& data, const std::vector<std::size_t>& members) {
  std::map<Index, std::vector<double>> columns;
  for (std::size_t slot = 0; slot < members.size(); ++slot) {
    for (const auto& e : data.vector(members[slot]).entries()) {
      auto& column = columns[e.index];
      column.resize(members.size(), 0.0);
      column[slot] = e.value;
    }
  }
  return columns;
}

double continuous_cluster_cost(const Dataset& data, const std::vector<std::size_t>& members, Objective objective) {
  double cost = 0.0;
  for (auto& [index, column] : coordinate_columns(data, members)) {
    column.resize(members.size(), 0.0);
    switch (objective) {
      case Objective::kMedian: {
        std::vector<double> sorted(column);
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[(sorted.size() - 1) / 2];
        for (double v : column) cost += std::fabs(v - median);
        break;
      }
      case Objective::kMeans: {
        double mean = 0.0;
        for (double v : column) mean += v;
        mean /= static_cast<double>(column.size());
        for (double v : column) cost += (v - mean) * (v - mean);
        break;
      }
      case Objective::kCenter: {
        const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
        cost = std::max(cost, (*hi - *lo) / 2.0);
        break;
      }
    }
  }
  return cost;
}

}  // namespace

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::kMedian: return "median";
    case Objective::kMeans: return "means";
    case Objective::kCenter: return "center";
  }
  return "unknown";
}

Objective parse_objective(const std::string& name) {
  if (name == "median") return Objective::kMedian;
  if (name == "means") return Objective::kMeans;
  if (name == "center") return Objective::kCenter;
  throw std::invalid_argument("unknown clustering objective '" + name + "'");
}

void validate_clustering(const Clustering& c, std::size_t n) {
  if (c.k < 1) throw std::invalid_argument("a clustering needs k >= 1");
  if (c.assignment.size() != n) throw std::invalid_argument("assignment length does not match the dataset");
  std::vector<bool> used(c.k, false);
  for (std::size_t label : c.assignment) {
    if (label >= c.k) throw std::invalid_argument("cluster label out of range");
    used[label] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) throw std::invalid_argument("empty cluster");
}

double clustering_cost(const Dataset& data, const Clustering& c, CentersMode mode) {
  const std::size_t n = data.size();
  const Members members = members_of(c, n);
  std::vector<double> per_cluster;
  per_cluster.reserve(c.k);

  if (mode == CentersMode::kContinuous) {
    const bool supported = (c.objective == Objective::kMedian && !c.norm.is_infinite() && c.norm.p() == 1.0) ||
                           (c.objective == Objective::kMeans && !c.norm.is_infinite() && c.norm.p() == 2.0) ||
                           (c.objective == Objective::kCenter && c.norm.is_infinite());
    if (!supported) {
      throw std::invalid_argument("continuous centers are available only for median/l1, means/l2 and center/l_inf, not " +
                                  to_string(c.objective) + "/l" + c.norm.to_string());
    }
    for (const auto& cluster : members) per_cluster.push_back(continuous_cluster_cost(data, cluster, c.objective));
    return combine(c.objective, per_cluster);
  }

  std::vector<double> distances(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (c.assignment[i] == c.assignment[j]) {
        distances[i * n + j] = distances[j * n + i] = lp_dist(data.vector(i), data.vector(j), c.norm);
      }
    }
  }
  return basic_cost_from_distances(distances, n, c);
}

double basic_cost_from_distances(const std::vector<double>& distances, std::size_t n, const Clustering& c) {
  if (distances.size() != n * n) throw std::invalid_argument("distance matrix must be n x n");
  const Members members = members_of(c, n);
  std::vector<double> per_cluster;
  per_cluster.reserve(c.k);
  std::vector<double> to_center;
  for (const auto& cluster : members) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t center : cluster) {
      to_center.clear();
      for (std::size_t j : cluster) to_center.push_back(distances[j * n + center]);
      best = std::min(best, cluster_cost(c.objective, to_center));
    }
    per_cluster.push_back(best);
  }
  return combine(c.objective, per_cluster);
}

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k < 1 || k > n) return out;
  std::vector<std::size_t> labels(n, 0);
  // Depth-first over restricted-growth strings: labels[i] <= max(labels[0..i-1]) + 1.
  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (used + (n - i) < k) return;
    if (i == n) {
      if (used == k) out.push_back(labels);
      return;
    }
    for (std::size_t label = 0; label <= used && label < k; ++label) {
      labels[i] = label;
      self(self, i + 1, std::max(used, label + 1));
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

}  // namespace sparse_sketch
