#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sparse_sketch/sparse_vector.hpp"

namespace sparse_sketch {

struct LabeledVector {
  std::string id;
  SparseVector vector;
};

// Ordered, id-tagged collection of sparse vectors sharing one ambient
// dimension. Sparsity and sign metadata are maintained on insertion.
class Dataset {
 public:
  explicit Dataset(Index dim = kMaxDimension) : dim_(dim) {}
  Dataset(Index dim, std::vector<LabeledVector> vectors);

  // Throws std::invalid_argument if v.dim() differs from dim().
  void add(std::string id, SparseVector v);

  Index dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  std::size_t max_sparsity() const { return max_sparsity_; }
  // True iff every stored value of every member is > 0.
  bool non_negative() const { return nonneg_; }

  const LabeledVector& operator[](std::size_t i) const { return vectors_[i]; }
  const SparseVector& vector(std::size_t i) const { return vectors_[i].vector; }
  const std::vector<LabeledVector>& items() const { return vectors_; }

 private:
  Index dim_;
  std::vector<LabeledVector> vectors_;
  std::size_t max_sparsity_ = 0;
  bool nonneg_ = true;
};

// Text format: one vector per line, `id<TAB>idx:value idx:value ...`.
// Blank lines and lines starting with '#' are skipped. Errors raise
// InputError with the offending line number.
Dataset read_text_dataset(std::istream& in, Index dim = kMaxDimension);
void write_text_dataset(std::ostream& out, const Dataset& data);

// JSON Lines format: `{"id": "...", "coords": {"idx": value, ...}}`.
Dataset read_jsonl_dataset(std::istream& in, Index dim = kMaxDimension);

// Picks the reader from the extension (.jsonl / .json -> JSON Lines, else text).
Dataset load_dataset(const std::string& path, Index dim = kMaxDimension);

}  // namespace sparse_sketch
