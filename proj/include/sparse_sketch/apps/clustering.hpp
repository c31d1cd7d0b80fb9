#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sparse_sketch/dataset.hpp"

namespace sparse_sketch {

enum class Objective { kMedian, kMeans, kCenter };
enum class CentersMode { kBasic, kContinuous };

std::string to_string(Objective objective);
Objective parse_objective(const std::string& name);

// A partition of dataset indices into k non-empty clusters together with
// the objective it is scored under.
struct Clustering {
  std::vector<std::size_t> assignment;  // assignment[i] in [0, k)
  std::size_t k = 1;
  Objective objective = Objective::kMedian;
  Norm norm = Norm::lp(1.0);
};

// Throws std::invalid_argument unless every label is < k and every cluster
// is non-empty.
void validate_clustering(const Clustering& c, std::size_t n);

// Cost of the clustering.
//   basic:      centers restricted to cluster members, any norm
//   continuous: optimal unrestricted centers in closed form, supported for
//               (median, l1) coordinate-wise median, (means, l2) centroid and
//               (center, l_inf) coordinate-wise midrange
// median and means sum per-cluster costs (means with squared distances);
// center takes the max over clusters.
double clustering_cost(const Dataset& data, const Clustering& c, CentersMode mode);

// Basic cost from an n x n matrix of (unpowered) distances, e.g. distances
// measured in an embedded space.
double basic_cost_from_distances(const std::vector<double>& distances, std::size_t n, const Clustering& c);

// Every partition of {0..n-1} into exactly k non-empty blocks, as
// restricted-growth label strings (first occurrence of labels in order).
std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n, std::size_t k);

}  // namespace sparse_sketch
