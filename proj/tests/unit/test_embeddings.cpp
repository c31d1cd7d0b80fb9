#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "sparse_sketch/embeddings.hpp"
#include "sparse_sketch/params.hpp"
#include "test_util.hpp"

namespace sparse_sketch {
namespace {

using testing::near_rel;
using testing::nonneg_sparse;
using testing::reference_dense_dist;
using testing::reference_dist;

constexpr Index kDim = 1000;

SparseVector vec(std::vector<Entry> entries, Index dim = kDim) { return SparseVector(dim, std::move(entries)); }

// First seed whose hash on m buckets satisfies pred.
HashSpec find_spec(std::uint64_t m, const std::function<bool(const BucketHasher&)>& pred) {
  for (std::uint64_t seed = 0;; ++seed) {
    const HashSpec spec{seed, 0, m};
    if (pred(BucketHasher(spec))) return spec;
  }
}

bool injective_on(const BucketHasher& h, const SparseVector& x, const SparseVector& y) {
  std::set<Index> support;
  for (const auto& e : x.entries()) support.insert(e.index);
  for (const auto& e : y.entries()) support.insert(e.index);
  std::set<std::uint64_t> buckets;
  for (Index j : support) buckets.insert(h(j));
  return buckets.size() == support.size();
}

// Definition of the max-hash base map evaluated directly: maximum of the
// landed support values, 0 for an empty bucket.
std::vector<double> reference_max_embed(const MaxHashMap& f, const SparseVector& x) {
  std::vector<double> out(f.output_dim(), 0.0);
  std::vector<bool> touched(f.output_dim(), false);
  for (const auto& e : x.entries()) {
    const auto b = f.bucket(e.index);
    out[b] = touched[b] ? std::max(out[b], e.value) : e.value;
    touched[b] = true;
  }
  return out;
}

double norm_exponent(Norm norm) { return norm.is_infinite() ? 0.0 : norm.p(); }

TEST(BirthdayMap, ForcedCollisionSums) {
  const BirthdayMap map({1, 0, 1});
  EXPECT_EQ(map.embed(vec({{0, 1.0}, {1, 2.0}})), std::vector<double>{3.0});
}

TEST(BirthdayMap, EmptyInputGivesZeros) {
  const BirthdayMap map({1, 0, 5});
  EXPECT_EQ(map.embed(vec({})), std::vector<double>(5, 0.0));
}

TEST(BirthdayMap, InjectiveSupportPreservesEveryNorm) {
  const SparseVector x = vec({{3, 1.5}, {10, -2.0}, {400, 0.25}});
  const HashSpec spec = find_spec(50, [&](const BucketHasher& h) { return injective_on(h, x, vec({})); });
  const auto out = BirthdayMap(spec).embed(x);
  for (Norm norm : {Norm::lp(1), Norm::lp(2), Norm::lp(3.5), Norm::linf()}) {
    EXPECT_TRUE(near_rel(lp_norm(out, norm), lp_norm(x, norm), 1e-12));
  }
}

TEST(BirthdayMap, Linear) {
  std::mt19937_64 gen(21);
  const BirthdayMap map({7, 0, 13});
  for (int trial = 0; trial < 200; ++trial) {
    const SparseVector x = testing::random_sparse(gen, kDim, 6, -2, 2);
    const SparseVector y = testing::random_sparse(gen, kDim, 6, -2, 2);
    const auto fx = map.embed(x);
    const auto fy = map.embed(y);
    const auto f2x = map.embed(x.scaled(2.0));
    const auto fsum = map.embed(sum_vectors(x, y));
    for (std::size_t b = 0; b < fx.size(); ++b) {
      EXPECT_EQ(f2x[b], 2.0 * fx[b]);
      EXPECT_NEAR(fsum[b], fx[b] + fy[b], 1e-12);
    }
  }
}

TEST(MaxHashMap, DirectEvaluation) {
  const HashSpec spec = find_spec(3, [](const BucketHasher& h) { return h(0) == 0 && h(2) == 0 && h(4) == 1; });
  const MaxHashMap f(spec);
  EXPECT_EQ(f.embed(vec({{0, 2.0}, {2, 5.0}, {4, 1.0}})), (std::vector<double>{5.0, 1.0, 0.0}));
}

TEST(MaxHashMap, ZeroMapsToZero) { EXPECT_EQ(MaxHashMap({3, 0, 3}).embed(vec({})), std::vector<double>(3, 0.0)); }

// With x = -e_0, y = e_1 sharing a bucket, the l_inf distance doubles.
TEST(MaxHashMap, NegativeEntriesCanExpand) {
  const HashSpec spec = find_spec(4, [](const BucketHasher& h) { return h(0) == h(1); });
  const MaxHashMap f(spec);
  const SparseVector x = vec({{0, -1.0}});
  const SparseVector y = vec({{1, 1.0}});
  EXPECT_EQ(lp_dist(x, y, Norm::linf()), 1.0);
  EXPECT_EQ(f.distance_pow(x, y, Norm::linf()), 2.0);
  EXPECT_EQ(reference_dense_dist(f.embed(x), f.embed(y), 0), 2.0);
}

TEST(MaxHashMap, MatchesDefinitionIncludingSignedInputs) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const MaxHashMap f({static_cast<std::uint64_t>(trial), 0, 1 + static_cast<std::uint64_t>(trial % 9)});
    const SparseVector x = testing::random_sparse(gen, kDim, 1 + trial % 12, -1, 1);
    EXPECT_EQ(f.embed(x), reference_max_embed(f, x));
    const auto sparse = f.embed_sparse(x);
    std::vector<double> rebuilt(f.output_dim(), 0.0);
    for (std::size_t i = 0; i < sparse.size(); ++i) {
      if (i > 0) EXPECT_LT(sparse[i - 1].bucket, sparse[i].bucket);
      rebuilt[sparse[i].bucket] = sparse[i].value;
    }
    EXPECT_EQ(rebuilt, f.embed(x));
  }
}

TEST(MaxHashMap, DistanceMatchesDenseEvaluation) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 300; ++trial) {
    const MaxHashMap f({static_cast<std::uint64_t>(trial), 0, 1 + static_cast<std::uint64_t>(trial % 17)});
    const SparseVector x = testing::random_sparse(gen, kDim, 1 + trial % 10, -1, 1);
    const SparseVector y = testing::random_sparse(gen, kDim, 1 + trial % 7, -1, 1);
    for (Norm norm : {Norm::lp(1), Norm::lp(2), Norm::lp(4), Norm::linf()}) {
      const double dense = reference_dense_dist(f.embed(x), f.embed(y), norm_exponent(norm));
      const double want = norm.is_infinite() ? dense : std::pow(dense, norm.p());
      EXPECT_TRUE(near_rel(f.distance_pow(x, y, norm), want, 1e-12));
    }
  }
}

// Adversarial m = 1 included: the embedded distance never exceeds the original.
TEST(MaxHashMapProperty, NeverExpandsNonNegativeDistances) {
  std::mt19937_64 gen(24);
  std::uniform_int_distribution<std::size_t> sparsity(0, 20);
  const std::uint64_t ms[] = {1, 2, 7, 100};
  for (int trial = 0; trial < 10000; ++trial) {
    const SparseVector x = nonneg_sparse(gen, 60, sparsity(gen));
    const SparseVector y = trial % 5 == 0 ? x.scaled(0.5) : nonneg_sparse(gen, 60, sparsity(gen));
    const MaxHashMap f({static_cast<std::uint64_t>(trial), 0, ms[trial % 4]});
    const auto fx = f.embed(x);
    const auto fy = f.embed(y);
    for (double p : {1.0, 2.0, 4.0, 0.0}) {
      EXPECT_LE(reference_dense_dist(fx, fy, p), reference_dist(x, y, p) + 1e-9);
    }
  }
}

TEST(MaxHashMapProperty, ExactWithoutCollisions) {
  std::mt19937_64 gen(25);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const SparseVector x = nonneg_sparse(gen, kDim, 1 + trial % 8);
    const SparseVector y = nonneg_sparse(gen, kDim, 1 + trial % 5);
    const MaxHashMap f({static_cast<std::uint64_t>(trial), 0, 64});
    if (!injective_on(BucketHasher(f.spec()), x, y)) continue;
    ++checked;
    for (Norm norm : {Norm::lp(1), Norm::lp(2), Norm::lp(3), Norm::lp(4), Norm::lp(9.5), Norm::linf()}) {
      const double embedded = reference_dense_dist(f.embed(x), f.embed(y), norm_exponent(norm));
      EXPECT_TRUE(near_rel(embedded, lp_dist(x, y, norm), 1e-12));
    }
  }
  EXPECT_GT(checked, 300);
}

// |max_t a_t - max_t b_t| <= max_t |a_t - b_t| for non-negative tuples.
TEST(MaxHashMapProperty, ScalarMaxInequality) {
  std::mt19937_64 gen(26);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t r = 1 + trial % 9;
    std::vector<double> a(r), b(r);
    double gap = 0.0;
    for (std::size_t t = 0; t < r; ++t) {
      a[t] = trial % 3 == 0 && t % 2 == 0 ? 0.0 : value(gen);
      b[t] = value(gen);
      gap = std::max(gap, std::fabs(a[t] - b[t]));
    }
    EXPECT_LE(std::fabs(*std::max_element(a.begin(), a.end()) - *std::max_element(b.begin(), b.end())), gap);
  }
}

// max a + max b <= 2 max_t (a_t + b_t) for non-negative tuples.
TEST(MaxHashMapProperty, AdditiveBound) {
  std::mt19937_64 gen(27);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t r = 1 + trial % 9;
    std::vector<double> a(r), b(r);
    double best = 0.0;
    for (std::size_t t = 0; t < r; ++t) {
      a[t] = value(gen);
      b[t] = value(gen);
      best = std::max(best, a[t] + b[t]);
    }
    EXPECT_LE(*std::max_element(a.begin(), a.end()) + *std::max_element(b.begin(), b.end()), 2 * best + 1e-15);
  }
}

// With m = ceil(100 s^2 / delta) the preservation rate is at least 1 - delta.
TEST(MaxHashMapProperty, CollisionFreeRate) {
  const std::size_t s = 6;
  const double delta = 0.1;
  const auto m = static_cast<std::uint64_t>(std::ceil(100.0 * s * s / delta));
  std::mt19937_64 gen(28);
  const SparseVector x = nonneg_sparse(gen, 100000, s);
  const SparseVector y = nonneg_sparse(gen, 100000, s);
  const int trials = 4000;
  int exact = 0;
  for (int t = 0; t < trials; ++t) {
    const MaxHashMap f({static_cast<std::uint64_t>(t), 0, m});
    bool all = true;
    for (Norm norm : {Norm::lp(1), Norm::lp(2), Norm::lp(4), Norm::linf()}) {
      const double want = norm.is_infinite() ? lp_dist(x, y, norm) : lp_dist_pow(x, y, norm);
      all &= std::fabs(f.distance_pow(x, y, norm) - want) <= 1e-9 * want;
    }
    exact += all ? 1 : 0;
  }
  const double sigma = std::sqrt(delta * (1 - delta) / trials);
  EXPECT_GE(exact / double(trials), 1 - delta - 3 * sigma);
}

TEST(StackedEmbedding, SingleCopyEqualsBaseMap) {
  EmbedParams params;
  params.m = 11;
  params.T = 1;
  params.seed = 5;
  const StackedEmbedding F(params);
  const SparseVector x = vec({{1, 0.5}, {2, 0.25}, {600, 1.0}});
  EXPECT_EQ(F.embed(x), MaxHashMap({5, 0, 11}).embed(x));
  EXPECT_EQ(F.output_dim(), 11u);
}

TEST(StackedEmbedding, ZeroMapsToZero) {
  EmbedParams params;
  params.m = 4;
  params.T = 3;
  EXPECT_EQ(StackedEmbedding(params).embed(vec({})), std::vector<double>(12, 0.0));
}

TEST(StackedEmbedding, CopiesAreConcatenatedInOrder) {
  EmbedParams params;
  params.m = 9;
  params.T = 2;
  params.seed = 77;
  const StackedEmbedding F(params);
  const SparseVector x = vec({{1, 0.5}, {2, 0.25}, {600, 1.0}, {601, 2.0}});
  const auto out = F.embed(x);
  const auto first = MaxHashMap({77, 0, 9}).embed(x);
  const auto second = MaxHashMap({77, 1, 9}).embed(x);
  ASSERT_EQ(out.size(), 18u);
  EXPECT_TRUE(std::equal(first.begin(), first.end(), out.begin()));
  EXPECT_TRUE(std::equal(second.begin(), second.end(), out.begin() + 9));
  EXPECT_NE(first, second);
}

TEST(EstimateDistance, IdentityIsZero) {
  EmbedParams params;
  params.m = 5;
  params.T = 4;
  const StackedEmbedding F(params);
  const SparseVector x = vec({{1, 0.5}, {700, 3.0}});
  EXPECT_EQ(estimate_distance(F, x, x, Norm::lp(2)), 0.0);
  EXPECT_EQ(estimate_distance(F, x, x, Norm::linf()), 0.0);
}

TEST(EstimateDistance, InjectiveSingleCopyIsExact) {
  const SparseVector x = vec({{1, 0.5}, {7, 3.0}, {99, 0.1}});
  const SparseVector y = vec({{7, 1.0}, {300, 2.0}});
  const HashSpec spec = find_spec(40, [&](const BucketHasher& h) { return injective_on(h, x, y); });
  EmbedParams params;
  params.m = 40;
  params.T = 1;
  params.seed = spec.seed;
  const StackedEmbedding F(params);
  EXPECT_TRUE(near_rel(estimate_distance(F, x, y, Norm::lp(2)), lp_dist(x, y, Norm::lp(2)), 1e-12));
}

TEST(EstimateDistance, PlannedAllPKeepsFourthPowerRatios) {
  EmbedParams params = plan_params({EmbedMode::kAllP, 10, 200, 0.2, {}, {}});
  params.seed = 31;
  const StackedEmbedding F(params);
  std::mt19937_64 gen(29);
  for (int pair = 0; pair < 100; ++pair) {
    const SparseVector x = nonneg_sparse(gen, kDim, 10);
    const SparseVector y = nonneg_sparse(gen, kDim, 10);
    const double ratio = estimate_distance(F, x, y, Norm::lp(4)) / lp_dist(x, y, Norm::lp(4));
    EXPECT_GE(ratio, 0.8);
    EXPECT_LE(ratio, 1.0 + 1e-9);
  }
}

TEST(EstimateDistance, TaggedEmbeddingsMustShareParameters) {
  EmbedParams params;
  params.m = 6;
  params.T = 2;
  const StackedEmbedding F(params);
  params.seed = 1;
  const StackedEmbedding G(params);
  const SparseVector x = vec({{1, 0.5}});
  const SparseVector y = vec({{2, 0.5}});
  EXPECT_DOUBLE_EQ(estimate_distance(embed_tagged(F, x), embed_tagged(F, y), Norm::lp(2)),
                   estimate_distance(F, x, y, Norm::lp(2)));
  EXPECT_THROW(estimate_distance(embed_tagged(F, x), embed_tagged(G, y), Norm::lp(2)), std::invalid_argument);
}

TEST(EstimateSumNorm, Examples) {
  EmbedParams params = plan_params({EmbedMode::kSumLinf, 1, 2, 0.5, {}, {}});
  const StackedEmbedding F(params);
  EXPECT_EQ(estimate_sum_norm(F, vec({{0, 1.0}}), vec({{0, 1.0}})), 2.0);
  EXPECT_EQ(lp_norm(sum_vectors(vec({{0, 1.0}}), vec({{0, 1.0}})), Norm::linf()), 2.0);
  EXPECT_EQ(estimate_sum_norm(F, vec({{0, 1.0}}), vec({{1, 1.0}})), 2.0);
  EXPECT_EQ(lp_norm(sum_vectors(vec({{0, 1.0}}), vec({{1, 1.0}})), Norm::linf()), 1.0);
  EXPECT_EQ(estimate_sum_norm(F, vec({}), vec({})), 0.0);
  EXPECT_THROW(estimate_sum_norm(F, vec({{0, -1.0}}), vec({})), std::invalid_argument);
}

TEST(EstimateSumNormProperty, Sandwich) {
  const StackedEmbedding F(plan_params({EmbedMode::kSumLinf, 1, 2, 0.5, {}, {}}));
  std::mt19937_64 gen(30);
  for (int trial = 0; trial < 5000; ++trial) {
    const SparseVector x = nonneg_sparse(gen, 100, 1 + trial % 15);
    const SparseVector y = nonneg_sparse(gen, 100, 1 + trial % 11);
    const double truth = lp_norm(sum_vectors(x, y), Norm::linf());
    const double sketch = estimate_sum_norm(F, x, y);
    EXPECT_GE(sketch, truth);
    EXPECT_LE(sketch, 2 * truth);
  }
}

TEST(EstimateSumLp, PlannedModeTracksSumNorm) {
  EmbedParams params = plan_params({EmbedMode::kSumLp, 3, 20, 0.3, {}, 2.0});
  params.seed = 8;
  const StackedEmbedding F(params);
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseVector x = nonneg_sparse(gen, kDim, 3);
    const SparseVector y = nonneg_sparse(gen, kDim, 3);
    const double truth = lp_norm(sum_vectors(x, y), Norm::lp(2));
    const double sketch = estimate_sum_lp(F, x, y, Norm::lp(2));
    const double ratio = std::pow(sketch / truth, 2.0);
    EXPECT_GE(ratio, 1 - 0.3);
    EXPECT_LE(ratio, 1 + 0.3);
  }
}

// Signed entries from {-Delta..Delta}: raw embedded p-th power over the true
// one lies in [(1 - eps) T, T] for the planned discrete parameters.
TEST(DiscreteMode, SmallDatasetRatios) {
  EmbedParams params = plan_params({EmbedMode::kDiscrete, 2, 8, 0.5, 1, 1.0});
  params.seed = 9;
  const StackedEmbedding F(params);
  std::mt19937_64 gen(32);
  std::vector<SparseVector> points;
  for (int i = 0; i < 8; ++i) {
    auto v = testing::random_sparse(gen, 50, 2, -1, 1);
    std::vector<Entry> entries;
    for (const auto& e : v.entries()) entries.push_back({e.index, e.value > 0 ? 1.0 : -1.0});
    points.emplace_back(50, entries);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double truth = lp_dist_pow(points[i], points[j], Norm::lp(1));
      if (truth == 0.0) continue;
      const double ratio = F.distance_pow_sum(points[i], points[j], Norm::lp(1)) / truth;
      EXPECT_GE(ratio, (1 - 0.5) * double(params.T));
      EXPECT_LE(ratio, double(params.T) * (1 + 1e-12));
    }
  }
}

}  // namespace
}  // namespace sparse_sketch
