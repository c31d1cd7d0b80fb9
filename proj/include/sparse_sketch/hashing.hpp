#pragma once

#include <cstdint>
#include <string_view>

#include "sparse_sketch/sparse_vector.hpp"

namespace sparse_sketch {

// Stafford "Mix13" 64-bit finalizer (the SplitMix64 output function). A
// bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed for a named purpose and index. All
// randomness in the library flows from a user seed through this function.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0);

// Fully determines one hash function h: [d] -> [m]. Functions that differ only
// in copy_index are treated as independent draws.
struct HashSpec {
  std::uint64_t seed = 0;
  std::uint64_t copy_index = 0;
  std::uint64_t buckets = 1;

  friend bool operator==(const HashSpec&, const HashSpec&) = default;
};

// Precomputed keys for repeated evaluation of one HashSpec.
class BucketHasher {
 public:
  explicit BucketHasher(const HashSpec& spec);

  std::uint64_t buckets() const { return buckets_; }

  std::uint64_t operator()(Index j) const {
    const std::uint64_t z = mix64(mix64(j ^ key0_) + key1_);
    // Multiply-high range reduction of a uniform 64-bit word onto [0, m).
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(z) * buckets_) >> 64);
  }

 private:
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t buckets_;
};

// h(j) for the function described by spec. Deterministic in (spec, j).
std::uint64_t hash_bucket(const HashSpec& spec, Index j);

}  // namespace sparse_sketch
