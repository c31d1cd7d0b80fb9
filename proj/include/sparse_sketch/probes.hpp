#pragma once

#include <concepts>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "sparse_sketch/embeddings.hpp"
#include "sparse_sketch/rng.hpp"
#include "sparse_sketch/sparse_vector.hpp"

namespace sparse_sketch {

// Sparse vectors with a uniformly random t-subset support of [d] and i.i.d.
// N(0, r) values on it.
struct UnifSpec {
  std::size_t t = 1;
  double r = 1.0;
  Index d = 1;
  std::uint64_t seed = 0;
};

// A stream of independent draws from a UnifSpec, fixed by spec.seed.
class UnifSampler {
 public:
  // Throws std::invalid_argument unless 1 <= t <= d and r > 0.
  explicit UnifSampler(const UnifSpec& spec);
  SparseVector next();

 private:
  UnifSpec spec_;
  Rng rng_;
};

// First draw of the stream for spec.
SparseVector sample_unif(const UnifSpec& spec);

// Dense m x d matrix stored row-major.
class DenseLinearMap {
 public:
  DenseLinearMap(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static DenseLinearMap identity(std::size_t d);
  static DenseLinearMap zeros(std::size_t rows, std::size_t cols);
  // i.i.d. N(0, 1) entries; with normalize_columns every column is scaled to
  // unit Euclidean norm.
  static DenseLinearMap gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed, bool normalize_columns);
  // Uniform +-1 entries.
  static DenseLinearMap random_signs(std::size_t rows, std::size_t cols, std::uint64_t seed);
  // The matrix of a birthday map restricted to the first `cols` coordinates.
  static DenseLinearMap from_birthday(const BirthdayMap& map, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Index input_dim() const { return cols_; }

  // Au for a sparse u; throws std::invalid_argument if u.dim() != cols().
  std::vector<double> apply(const SparseVector& u) const;
  // <A_i, A_j> of two columns.
  double column_dot(std::size_t i, std::size_t j) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// CSV: a `m,d` header line, then m rows of d comma-separated values.
DenseLinearMap read_dense_map(std::istream& in);
void write_dense_map(std::ostream& out, const DenseLinearMap& map);

// Anything that maps a sparse vector linearly to a dense output.
template <class Map>
concept SparseLinearMap = requires(const Map& map, const SparseVector& u) {
  { map.apply(u) } -> std::convertible_to<std::vector<double>>;
};

// Outcome of one norm-preservation trial.
struct PreservationTrial {
  double deviation;  // | ||Au||^p - ||u||^p | / ||u||^p  (l_inf: on the norms)
  bool pass;
};

// Relative tolerance used for "exact" preservation (gamma = 0).
inline constexpr double kExactTolerance = 1e-9;

PreservationTrial preservation_trial(const std::vector<double>& image, const SparseVector& u, Norm norm,
                                     double gamma);

// Fraction of draws u ~ Unif(spec) with | ||Au||_p^p - ||u||_p^p | <= gamma ||u||_p^p
// (gamma = 0 meaning equality up to kExactTolerance). Trials are split into
// fixed-size shards seeded from (spec.seed, shard), so the result does not
// depend on `threads`. When `trace` is given it receives one entry per trial.
double preservation_rate(const DenseLinearMap& A, const UnifSpec& spec, Norm norm, double gamma,
                         std::size_t trials, unsigned threads = 1, std::vector<PreservationTrial>* trace = nullptr);
double preservation_rate(const BirthdayMap& A, const UnifSpec& spec, Norm norm, double gamma,
                         std::size_t trials, unsigned threads = 1, std::vector<PreservationTrial>* trace = nullptr);

// Z = sum over ordered pairs i != j of supp(u) of <A_i, A_j>^2.
double gram_overlap_z(const DenseLinearMap& A, const SparseVector& u);

struct LinfWitness {
  SparseVector x;       // 0/1 indicator of 10 columns
  std::size_t row;      // row realizing the large coordinate
  double image_linf;    // ||Ax||_inf, re-evaluated
};

// Builds a 10-sparse 0/1 vector x with ||Ax||_inf >= 5 > (3/2) ||x||_inf,
// showing that A cannot keep the l_inf norm of all such vectors within
// [1/2, 3/2]. Requires 100 m < d (PreconditionError kShape) and an entry of
// magnitude >= 1/2 in every column (PreconditionError kColumns). Picks the
// row with the most same-signed large entries (lowest row on ties) and the
// ten lowest such columns. The result is re-verified before returning.
LinfWitness find_linf_violation(const DenseLinearMap& A);

}  // namespace sparse_sketch
