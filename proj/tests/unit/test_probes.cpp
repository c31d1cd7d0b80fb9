#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "sparse_sketch/embeddings.hpp"
#include "sparse_sketch/errors.hpp"
#include "sparse_sketch/probes.hpp"

namespace sparse_sketch {
namespace {

TEST(SampleUnif, FullSupportWhenTEqualsD) {
  const SparseVector u = sample_unif({12, 1.0, 12, 3});
  ASSERT_EQ(u.nnz(), 12u);
  for (Index j = 0; j < 12; ++j) EXPECT_EQ(u.entries()[j].index, j);
}

TEST(SampleUnif, RejectsInvalidSpecs) {
  EXPECT_THROW(sample_unif({13, 1.0, 12, 3}), std::invalid_argument);
  EXPECT_THROW(sample_unif({0, 1.0, 12, 3}), std::invalid_argument);
  EXPECT_THROW(sample_unif({2, 0.0, 12, 3}), std::invalid_argument);
}

TEST(SampleUnif, SupportSizeAndDistinctIndices) {
  UnifSampler sampler({7, 1.0, 1000, 4});
  for (int i = 0; i < 500; ++i) {
    const SparseVector u = sampler.next();
    EXPECT_EQ(u.nnz(), 7u);
    for (const auto& e : u.entries()) EXPECT_LT(e.index, 1000u);
  }
}

TEST(SampleUnif, CoordinateMeansAreZero) {
  const std::size_t d = 20, t = 5;
  const double r = 2.0;
  const int draws = 10000;
  UnifSampler sampler({t, r, d, 5});
  std::vector<double> sums(d, 0.0);
  std::vector<int> hits(d, 0);
  for (int i = 0; i < draws; ++i) {
    const SparseVector u = sampler.next();
    for (const auto& e : u.entries()) {
      sums[e.index] += e.value;
      ++hits[e.index];
    }
  }
  const double sigma = std::sqrt(double(t) / d * r / draws);
  for (std::size_t j = 0; j < d; ++j) {
    EXPECT_LE(std::fabs(sums[j] / draws), 5 * sigma);
    // Each index is selected with probability t / d.
    const double expected = draws * double(t) / d;
    EXPECT_LE(std::fabs(hits[j] - expected), 5 * std::sqrt(expected));
  }
}

TEST(SampleUnif, SquaredNormMeanIsTR) {
  const std::size_t t = 6;
  const double r = 0.5;
  const int draws = 10000;
  UnifSampler sampler({t, r, 500, 6});
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += std::pow(lp_norm(sampler.next(), Norm::lp(2)), 2);
  // Var ||u||^2 = t * 2 r^2 for Gaussian entries.
  const double sigma = std::sqrt(t * 2 * r * r / draws);
  EXPECT_LE(std::fabs(sum / draws - t * r), 5 * sigma);
}

TEST(SampleUnif, SameSeedSameStream) {
  UnifSampler a({3, 1.0, 100, 9}), b({3, 1.0, 100, 9});
  for (int i = 0; i < 50; ++i) {
    const auto x = a.next(), y = b.next();
    ASSERT_EQ(x.nnz(), y.nnz());
    for (std::size_t e = 0; e < x.nnz(); ++e) {
      EXPECT_EQ(x.entries()[e].index, y.entries()[e].index);
      EXPECT_EQ(x.entries()[e].value, y.entries()[e].value);
    }
  }
}

TEST(PreservationRate, IdentityAlwaysPreserves) {
  const auto A = DenseLinearMap::identity(30);
  for (double gamma : {0.0, 0.01, 0.5}) {
    EXPECT_EQ(preservation_rate(A, {4, 1.0, 30, 1}, Norm::lp(2), gamma, 500), 1.0);
    EXPECT_EQ(preservation_rate(A, {4, 1.0, 30, 1}, Norm::linf(), gamma, 200), 1.0);
  }
}

TEST(PreservationRate, ZeroMapNeverPreserves) {
  const auto A = DenseLinearMap::zeros(5, 30);
  for (double gamma : {0.0, 0.5, 0.99}) EXPECT_EQ(preservation_rate(A, {4, 1.0, 30, 1}, Norm::lp(2), gamma, 500), 0.0);
}

TEST(PreservationRate, BirthdayMapIsUsuallyExact) {
  const std::size_t s = 6;
  const BirthdayMap birthday({17, 0, 100 * s * s});
  const auto A = DenseLinearMap::from_birthday(birthday, s * s);
  const UnifSpec spec{s, 1.0, s * s, 2};
  const double dense_rate = preservation_rate(A, spec, Norm::lp(2), 0.0, 10000);
  EXPECT_GE(dense_rate, 0.98);
  EXPECT_EQ(dense_rate, preservation_rate(birthday, spec, Norm::lp(2), 0.0, 10000));
}

TEST(PreservationRate, DimensionMismatchThrows) {
  EXPECT_THROW(preservation_rate(DenseLinearMap::identity(5), {2, 1.0, 6, 1}, Norm::lp(2), 0.0, 10),
               std::invalid_argument);
  EXPECT_THROW(preservation_rate(DenseLinearMap::identity(5), {2, 1.0, 5, 1}, Norm::lp(2), 0.0, 0),
               std::invalid_argument);
}

TEST(PreservationRateProperty, MonotoneInGamma) {
  const auto A = DenseLinearMap::gaussian(12, 40, 3, true);
  double previous = 0.0;
  for (double gamma : {0.0, 0.01, 0.05, 0.1, 0.3, 0.6, 1.0, 3.0}) {
    const double rate = preservation_rate(A, {5, 1.0, 40, 8}, Norm::lp(2), gamma, 2000);
    EXPECT_GE(rate, previous);
    previous = rate;
  }
}

TEST(PreservationRateProperty, IndependentOfThreadCount) {
  const auto A = DenseLinearMap::gaussian(10, 50, 4, true);
  std::vector<PreservationTrial> one, four;
  const double a = preservation_rate(A, {5, 1.0, 50, 8}, Norm::lp(2), 0.2, 1000, 1, &one);
  const double b = preservation_rate(A, {5, 1.0, 50, 8}, Norm::lp(2), 0.2, 1000, 4, &four);
  EXPECT_EQ(a, b);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].deviation, four[i].deviation);
}

TEST(GramOverlap, OrthogonalColumnsGiveZero) {
  const auto A = DenseLinearMap::identity(10);
  EXPECT_EQ(gram_overlap_z(A, sample_unif({6, 1.0, 10, 1})), 0.0);
}

TEST(GramOverlap, SingleSupportGivesZero) {
  const auto A = DenseLinearMap::gaussian(4, 10, 2, false);
  EXPECT_EQ(gram_overlap_z(A, SparseVector(10, {{3, 1.0}})), 0.0);
}

TEST(GramOverlap, TwoIdenticalUnitColumns) {
  DenseLinearMap A = DenseLinearMap::zeros(3, 4);
  A.at(1, 0) = 1.0;
  A.at(1, 1) = 1.0;
  A.at(2, 2) = 1.0;
  EXPECT_EQ(gram_overlap_z(A, SparseVector(4, {{0, 0.3}, {1, -2.0}})), 2.0);
  EXPECT_THROW(gram_overlap_z(A, SparseVector(5, {{0, 1.0}})), std::invalid_argument);
}

TEST(GramOverlapProperty, NonNegativeAndMatchesDirectSum) {
  const auto A = DenseLinearMap::gaussian(6, 30, 5, true);
  UnifSampler sampler({5, 1.0, 30, 6});
  for (int trial = 0; trial < 200; ++trial) {
    const SparseVector u = sampler.next();
    double direct = 0.0;
    for (const auto& a : u.entries()) {
      for (const auto& b : u.entries()) {
        if (a.index == b.index) continue;
        double dot = 0.0;
        for (std::size_t r = 0; r < A.rows(); ++r) dot += A.at(r, a.index) * A.at(r, b.index);
        direct += dot * dot;
      }
    }
    const double z = gram_overlap_z(A, u);
    EXPECT_GE(z, 0.0);
    EXPECT_NEAR(z, direct, 1e-9 * std::max(1.0, direct));
  }
}

TEST(LinfViolation, SingleDominatingRow) {
  DenseLinearMap A = DenseLinearMap::zeros(5, 1000);
  for (std::size_t c = 0; c < 1000; ++c) A.at(0, c) = 1.0;
  const LinfWitness w = find_linf_violation(A);
  EXPECT_EQ(w.x.nnz(), 10u);
  EXPECT_EQ(w.row, 0u);
  EXPECT_EQ(w.image_linf, 10.0);
  EXPECT_EQ(lp_norm(w.x, Norm::linf()), 1.0);
}

TEST(LinfViolation, RandomSignMatrix) {
  const auto A = DenseLinearMap::random_signs(9, 1000, 12);
  const LinfWitness w = find_linf_violation(A);
  EXPECT_EQ(w.x.nnz(), 10u);
  for (const auto& e : w.x.entries()) EXPECT_EQ(e.value, 1.0);
  // Independent re-evaluation of ||Ax||_inf.
  double best = 0.0;
  for (std::size_t r = 0; r < A.rows(); ++r) {
    double acc = 0.0;
    for (const auto& e : w.x.entries()) acc += A.at(r, e.index);
    best = std::max(best, std::fabs(acc));
  }
  EXPECT_GE(best, 5.0);
  EXPECT_EQ(best, w.image_linf);
}

TEST(LinfViolation, TiesPickLowestRow) {
  DenseLinearMap A = DenseLinearMap::zeros(4, 1000);
  for (std::size_t c = 0; c < 1000; ++c) {
    A.at(2, c) = -1.0;
    A.at(3, c) = 1.0;
  }
  EXPECT_EQ(find_linf_violation(A).row, 2u);
}

TEST(LinfViolation, PreconditionErrors) {
  DenseLinearMap A = DenseLinearMap::random_signs(5, 1000, 1);
  for (std::size_t r = 0; r < 5; ++r) A.at(r, 17) = 0.0;
  try {
    find_linf_violation(A);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.kind(), PreconditionError::Kind::kColumns);
  }
  try {
    find_linf_violation(DenseLinearMap::random_signs(10, 1000, 1));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.kind(), PreconditionError::Kind::kShape);
  }
}

TEST(DenseMapCsv, RoundTrip) {
  const auto A = DenseLinearMap::gaussian(3, 5, 7, false);
  std::stringstream io;
  write_dense_map(io, A);
  const auto B = read_dense_map(io);
  ASSERT_EQ(B.rows(), 3u);
  ASSERT_EQ(B.cols(), 5u);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(A.at(r, c), B.at(r, c));
  }
}

TEST(DenseMapCsv, MalformedInputReportsLine) {
  std::stringstream io("2,2\n1,2\n3\n");
  try {
    read_dense_map(io);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(DenseLinearMap, GaussianColumnsAreUnitWhenNormalized) {
  const auto A = DenseLinearMap::gaussian(8, 20, 3, true);
  for (std::size_t c = 0; c < 20; ++c) EXPECT_NEAR(A.column_dot(c, c), 1.0, 1e-12);
}

}  // namespace
}  // namespace sparse_sketch
