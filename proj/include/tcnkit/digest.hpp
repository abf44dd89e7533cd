#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace tcnkit {

// 128-bit content digest used for set membership during enumeration sweeps.
// Collision probability is negligible at the scales we enumerate (~2^-90
// for a hundred million entries).
struct Digest128 {
  std::uint64_t hi = 0, lo = 0;
  friend bool operator==(const Digest128&, const Digest128&) = default;
};

Digest128 digest_bytes(const void* data, std::size_t len);
inline Digest128 digest_string(const std::string& s) { return digest_bytes(s.data(), s.size()); }

// Sharded open-addressing set of digests with insert-if-absent semantics;
// safe for concurrent use.
class DigestSet {
 public:
  explicit DigestSet(std::size_t initial_per_shard = 1024);
  // Returns true when the digest was newly inserted.
  bool insert(Digest128 d);
  bool contains(Digest128 d) const;
  std::uint64_t size() const;

 private:
  static constexpr int kShards = 64;
  struct Shard {
    mutable std::mutex mu;
    std::vector<Digest128> slots;
    std::size_t count = 0;
  };
  Shard shards_[kShards];

  static bool insert_into(std::vector<Digest128>& slots, Digest128 d);
  static void grow(Shard& s);
};

}  // namespace tcnkit
