#include "sparse_sketch/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "sparse_sketch/errors.hpp"
#include "sparse_sketch/format.hpp"
#include "sparse_sketch/hashing.hpp"
#include "sparse_sketch/parallel.hpp"

namespace sparse_sketch {
namespace {

constexpr std::size_t kShardTrials = 256;
constexpr std::size_t kWitnessSupport = 10;

template <class Map>
double rate_impl(const Map& A, const UnifSpec& spec, Norm norm, double gamma, std::size_t trials, unsigned threads,
                 std::vector<PreservationTrial>* trace) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  UnifSampler validate(spec);
  const std::size_t shards = (trials + kShardTrials - 1) / kShardTrials;
  std::vector<PreservationTrial> results(trials);
  parallel_for(shards, threads, [&](std::size_t shard) {
    UnifSpec shard_spec = spec;
    shard_spec.seed = derive_seed(spec.seed, "unif-shard", shard);
    UnifSampler sampler(shard_spec);
    const std::size_t end = std::min(trials, (shard + 1) * kShardTrials);
    for (std::size_t t = shard * kShardTrials; t < end; ++t) {
      const SparseVector u = sampler.next();
      results[t] = preservation_trial(A.apply(u), u, norm, gamma);
    }
  });
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  if (trace) *trace = std::move(results);
  return static_cast<double>(passed) / static_cast<double>(trials);
}

}  // namespace

UnifSampler::UnifSampler(const UnifSpec& spec) : spec_(spec), rng_(spec.seed) {
  if (spec.d < 1 || spec.d > kMaxDimension) throw std::invalid_argument("d must be in [1, 2^62]");
  if (spec.t < 1 || spec.t > spec.d) throw std::invalid_argument("support size t must satisfy 1 <= t <= d");
  if (!(spec.r > 0.0)) throw std::invalid_argument("variance r must be > 0");
}

SparseVector UnifSampler::next() {
  // Floyd's algorithm: t distinct indices, uniformly among all t-subsets.
  std::unordered_set<Index> chosen;
  chosen.reserve(spec_.t * 2);
  for (Index j = spec_.d - spec_.t; j < spec_.d; ++j) {
    const Index r = rng_.below(j + 1);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::vector<Index> support(chosen.begin(), chosen.end());
  std::sort(support.begin(), support.end());
  const double sd = std::sqrt(spec_.r);
  std::vector<Entry> entries;
  entries.reserve(support.size());
  for (Index j : support) {
    double v = 0.0;
    while (v == 0.0) v = sd * rng_.normal();
    entries.push_back({j, v});
  }
  return SparseVector(spec_.d, std::move(entries));
}

SparseVector sample_unif(const UnifSpec& spec) { return UnifSampler(spec).next(); }

DenseLinearMap::DenseLinearMap(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("a linear map needs at least one row and column");
  if (data_.size() != rows * cols) throw std::invalid_argument("entry count does not match m x d");
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("linear map entries must be finite");
  }
}

DenseLinearMap DenseLinearMap::identity(std::size_t d) {
  DenseLinearMap out = zeros(d, d);
  for (std::size_t i = 0; i < d; ++i) out.at(i, i) = 1.0;
  return out;
}

DenseLinearMap DenseLinearMap::zeros(std::size_t rows, std::size_t cols) {
  return DenseLinearMap(rows, cols, std::vector<double>(rows * cols, 0.0));
}

DenseLinearMap DenseLinearMap::gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                        bool normalize_columns) {
  Rng rng(seed);
  std::vector<double> data(rows * cols);
  for (auto& v : data) v = rng.normal();
  DenseLinearMap out(rows, cols, std::move(data));
  if (normalize_columns) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double len = std::sqrt(out.column_dot(c, c));
      if (len > 0.0) {
        for (std::size_t r = 0; r < rows; ++r) out.at(r, c) /= len;
      }
    }
  }
  return out;
}

DenseLinearMap DenseLinearMap::random_signs(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> data(rows * cols);
  for (auto& v : data) v = rng.coin() ? 1.0 : -1.0;
  return DenseLinearMap(rows, cols, std::move(data));
}

DenseLinearMap DenseLinearMap::from_birthday(const BirthdayMap& map, std::size_t cols) {
  DenseLinearMap out = zeros(map.output_dim(), cols);
  for (std::size_t c = 0; c < cols; ++c) out.at(map.bucket(c), c) = 1.0;
  return out;
}

std::vector<double> DenseLinearMap::apply(const SparseVector& u) const {
  if (u.dim() != cols_) throw std::invalid_argument("vector dimension does not match the map's column count");
  std::vector<double> out(rows_, 0.0);
  for (const auto& e : u.entries()) {
    for (std::size_t r = 0; r < rows_; ++r) out[r] += data_[r * cols_ + e.index] * e.value;
  }
  return out;
}

double DenseLinearMap::column_dot(std::size_t i, std::size_t j) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) sum += data_[r * cols_ + i] * data_[r * cols_ + j];
  return sum;
}

DenseLinearMap read_dense_map(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto split = [&](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      cells.push_back(cell);
    }
    return cells;
  };
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("empty dense map file");
  const auto header = split(line);
  if (header.size() != 2) throw InputError("expected header `m,d`", line_no);
  std::size_t rows, cols;
  try {
    rows = std::stoull(header[0]);
    cols = std::stoull(header[1]);
  } catch (const std::exception&) {
    throw InputError("bad `m,d` header", line_no);
  }
  if (rows < 1 || cols < 1) throw InputError("m and d must be >= 1", line_no);
  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_line()) throw InputError("expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
    const auto cells = split(line);
    if (cells.size() != cols) throw InputError("expected " + std::to_string(cols) + " values", line_no);
    for (const auto& cell : cells) {
      try {
        data.push_back(parse_double(cell));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what(), line_no);
      }
    }
  }
  try {
    return DenseLinearMap(rows, cols, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

void write_dense_map(std::ostream& out, const DenseLinearMap& map) {
  out << map.rows() << ',' << map.cols() << '\n';
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(map.at(r, c));
    }
    out << '\n';
  }
}

PreservationTrial preservation_trial(const std::vector<double>& image, const SparseVector& u, Norm norm,
                                     double gamma) {
  const double original = lp_norm_pow(u, norm);
  const double mapped = norm.is_infinite() ? lp_norm(image, norm) : [&] {
    double sum = 0.0;
    for (double v : image) sum += pow_abs(v, norm.p());
    return sum;
  }();
  const double deviation = original > 0.0 ? std::fabs(mapped - original) / original : (mapped == 0.0 ? 0.0 : 1.0);
  return {deviation, deviation <= std::max(gamma, kExactTolerance)};
}

double preservation_rate(const DenseLinearMap& A, const UnifSpec& spec, Norm norm, double gamma, std::size_t trials,
                         unsigned threads, std::vector<PreservationTrial>* trace) {
  if (A.cols() != spec.d) throw std::invalid_argument("map column count does not match the sampling dimension");
  return rate_impl(A, spec, norm, gamma, trials, threads, trace);
}

double preservation_rate(const BirthdayMap& A, const UnifSpec& spec, Norm norm, double gamma, std::size_t trials,
                         unsigned threads, std::vector<PreservationTrial>* trace) {
  return rate_impl(A, spec, norm, gamma, trials, threads, trace);
}

double gram_overlap_z(const DenseLinearMap& A, const SparseVector& u) {
  if (u.dim() != A.cols()) throw std::invalid_argument("vector dimension does not match the map's column count");
  const auto e = u.entries();
  double z = 0.0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      const double dot = A.column_dot(e[a].index, e[b].index);
      z += 2.0 * dot * dot;  // (i, j) and (j, i)
    }
  }
  return z;
}

LinfWitness find_linf_violation(const DenseLinearMap& A) {
  const std::size_t m = A.rows();
  const std::size_t d = A.cols();
  if (100 * m >= d) {
    throw PreconditionError(PreconditionError::Kind::kShape,
                            "need m < d/100, got m=" + std::to_string(m) + ", d=" + std::to_string(d));
  }
  for (std::size_t c = 0; c < d; ++c) {
    bool large = false;
    for (std::size_t r = 0; r < m && !large; ++r) large = std::fabs(A.at(r, c)) >= 0.5;
    if (!large) {
      throw PreconditionError(PreconditionError::Kind::kColumns,
                              "column " + std::to_string(c) + " has no entry of magnitude >= 1/2");
    }
  }

  std::size_t best_row = 0, best_count = 0;
  bool best_positive = true;
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t pos = 0, neg = 0;
    for (std::size_t c = 0; c < d; ++c) {
      const double v = A.at(r, c);
      if (v >= 0.5) ++pos;
      if (v <= -0.5) ++neg;
    }
    const std::size_t count = std::max(pos, neg);
    if (count > best_count) {
      best_count = count;
      best_row = r;
      best_positive = pos >= neg;
    }
  }
  if (best_count < kWitnessSupport) {
    throw InvariantBreach("pigeonhole failed: no row has 10 same-signed large entries");
  }

  std::vector<Entry> entries;
  for (std::size_t c = 0; c < d && entries.size() < kWitnessSupport; ++c) {
    const double v = A.at(best_row, c);
    if (best_positive ? v >= 0.5 : v <= -0.5) entries.push_back({c, 1.0});
  }
  SparseVector x(d, std::move(entries));
  const double image = lp_norm(A.apply(x), Norm::linf());
  if (x.nnz() != kWitnessSupport || lp_norm(x, Norm::linf()) != 1.0 || !(image >= 5.0)) {
    throw InvariantBreach("witness failed re-verification");
  }
  return {std::move(x), best_row, image};
}

}  // namespace sparse_sketch
