#include <gtest/gtest.h>

#include <random>

#include "sparse_sketch/apps/maxcut.hpp"
#include "sparse_sketch/embeddings.hpp"
#include "test_util.hpp"

namespace sparse_sketch {
namespace {

Dataset random_nonneg(std::uint64_t seed, std::size_t n, Index dim, std::size_t s) {
  std::mt19937_64 gen(seed);
  Dataset data(dim);
  for (std::size_t i = 0; i < n; ++i) data.add("v" + std::to_string(i), testing::nonneg_sparse(gen, dim, s));
  return data;
}

// Every subset, both orientations, recomputed from scratch.
double reference_maxcut(const Dataset& data, double p) {
  const std::size_t n = data.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (((mask >> i) & 1) && !((mask >> j) & 1)) {
          value += std::pow(testing::reference_dist(data.vector(i), data.vector(j), p), p);
        }
      }
    }
    best = std::max(best, value);
  }
  return best;
}

TEST(MaxCutBrute, TwoPoints) {
  Dataset data(10);
  data.add("a", SparseVector(10, {{0, 1.0}}));
  data.add("b", SparseVector(10, {{0, 3.0}, {1, 1.0}}));
  const CutResult cut = maxcut_brute(data, Norm::lp(2));
  EXPECT_DOUBLE_EQ(cut.value, 5.0);
  EXPECT_NE(cut.side[0], cut.side[1]);
}

// Points 0, 1, 2 on a line with p = 1: the cuts {0}|{1,2}, {2}|{0,1} and
// {1}|{0,2} have values 1 + 2, 2 + 1 and 1 + 1, so the optimum is 3.
TEST(MaxCutBrute, CollinearThreePoints) {
  Dataset data(10);
  data.add("zero", SparseVector(10));
  data.add("one", SparseVector(10, {{0, 1.0}}));
  data.add("two", SparseVector(10, {{0, 2.0}}));
  const CutResult cut = maxcut_brute(data, Norm::lp(1));
  EXPECT_EQ(cut.value, 3.0);
  EXPECT_NE(cut.side[0], cut.side[2]);
}

TEST(MaxCutBrute, MatchesFullEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset data = random_nonneg(seed, 3 + seed % 7, 30, 3);
    for (double p : {1.0, 2.0, 3.0}) {
      const CutResult cut = maxcut_brute(data, Norm::lp(p));
      EXPECT_TRUE(testing::near_rel(cut.value, reference_maxcut(data, p), 1e-12));
      EXPECT_TRUE(testing::near_rel(cut.value, cut_value(cut_weights(data, Norm::lp(p)), cut.side), 1e-12));
    }
  }
}

TEST(MaxCutBrute, DuplicateSwapSymmetry) {
  Dataset data(10);
  data.add("a", SparseVector(10, {{0, 1.0}}));
  data.add("a2", SparseVector(10, {{0, 1.0}}));
  data.add("b", SparseVector(10, {{1, 2.0}}));
  data.add("c", SparseVector(10, {{2, 0.5}}));
  const auto weights = cut_weights(data, Norm::lp(2));
  const CutResult cut = maxcut_brute(weights, 4);
  std::vector<bool> swapped = cut.side;
  std::swap(swapped[0], swapped[1]);
  EXPECT_EQ(cut_value(weights, swapped), cut.value);
}

TEST(MaxCutBrute, RejectsLargeInputs) {
  EXPECT_THROW(maxcut_brute(std::vector<double>(23 * 23, 0.0), 23), std::invalid_argument);
  EXPECT_THROW(maxcut_brute(std::vector<double>(5, 0.0), 3), std::invalid_argument);
  EXPECT_THROW(cut_weights(Dataset(4), Norm::linf()), std::invalid_argument);
}

TEST(MaxCutSketched, InjectiveHashIsExact) {
  Dataset data(1000);
  data.add("a", SparseVector(1000, {{1, 1.0}, {2, 0.5}}));
  data.add("b", SparseVector(1000, {{3, 2.0}}));
  data.add("c", SparseVector(1000, {{2, 1.5}, {4, 0.25}}));
  const double truth = maxcut_brute(data, Norm::lp(2)).value;
  int injective = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SketchedCut sketched = maxcut_sketched(data, Norm::lp(2), 0.5, seed, 16);
    const MaxHashMap f({seed, 0, 16});
    std::set<std::uint64_t> buckets;
    for (Index j : {1, 2, 3, 4}) buckets.insert(f.bucket(j));
    if (buckets.size() == 4) {
      ++injective;
      EXPECT_TRUE(testing::near_rel(sketched.cut.value, truth, 1e-12));
    }
  }
  EXPECT_GT(injective, 0);
}

TEST(MaxCutSketched, SingleBucketStillBelowTruth) {
  const Dataset data = random_nonneg(5, 8, 100, 3);
  const double truth = maxcut_brute(data, Norm::lp(2)).value;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LE(maxcut_sketched(data, Norm::lp(2), 0.25, seed, 1).cut.value, truth + 1e-9);
  }
}

TEST(MaxCutSketched, DefaultBucketCount) {
  const Dataset data = random_nonneg(6, 4, 100, 3);
  EXPECT_EQ(maxcut_sketched(data, Norm::lp(2), 0.25, 1).buckets, 200u * 3 * 16);
}

// The projected optimum lies between the projected value of the true
// optimal cut and the true optimum.
TEST(MaxCutSketchedProperty, Sandwich) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dataset data = random_nonneg(100 + seed, 9, 40, 4);
    const CutResult truth = maxcut_brute(data, Norm::lp(2));
    const SketchedCut sketched = maxcut_sketched(data, Norm::lp(2), 0.5, seed, 1 + seed % 12);
    EXPECT_LE(sketched.cut.value, truth.value + 1e-9);
    EXPECT_GE(sketched.cut.value, cut_value(sketched.weights, truth.side) - 1e-9);
  }
}

TEST(MaxCutSketchedProperty, MeanDeficitIsSmall) {
  const Dataset data = random_nonneg(7, 10, 10000, 4);
  const double truth = maxcut_brute(data, Norm::lp(2)).value;
  double deficit = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double sketch = maxcut_sketched(data, Norm::lp(2), 0.25, seed).cut.value;
    ASSERT_LE(sketch, truth + 1e-9);
    deficit += (truth - sketch) / truth;
  }
  EXPECT_LE(deficit / 100, 0.25);
}

}  // namespace
}  // namespace sparse_sketch
