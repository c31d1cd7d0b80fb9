#include "sparse_sketch/hashing.hpp"

namespace sparse_sketch {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  // FNV-1a over the purpose tag.
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    tag ^= c;
    tag *= 0x100000001b3ULL;
  }
  return mix64(mix64(seed ^ mix64(tag)) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

BucketHasher::BucketHasher(const HashSpec& spec)
    : key0_(derive_seed(spec.seed, "bucket-hash", spec.copy_index)),
      key1_(mix64(key0_ ^ 0xd6e8feb86659fd93ULL)),
      buckets_(spec.buckets == 0 ? 1 : spec.buckets) {}

std::uint64_t hash_bucket(const HashSpec& spec, Index j) { return BucketHasher(spec)(j); }

}  // namespace sparse_sketch
