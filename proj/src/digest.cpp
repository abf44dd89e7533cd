#include "tcnkit/digest.hpp"

namespace tcnkit {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::uint8_t* p, std::size_t n, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

Digest128 digest_bytes(const void* data, std::size_t len) {
  const auto* p = static_cast<const std::uint8_t*>(data);
  Digest128 d;
  d.hi = mix(fnv1a(p, len, 0xcbf29ce484222325ull) ^ (len * 0x9e3779b97f4a7c15ull));
  d.lo = mix(fnv1a(p, len, 0x84222325cbf29ce4ull) + 0x2545f4914f6cdd1dull * len);
  if (d.hi == 0 && d.lo == 0) d.lo = 1;  // reserve (0,0) as the empty slot
  return d;
}

DigestSet::DigestSet(std::size_t initial_per_shard) {
  std::size_t cap = 16;
  while (cap < initial_per_shard) cap <<= 1;
  for (auto& s : shards_) s.slots.assign(cap, Digest128{});
}

bool DigestSet::insert_into(std::vector<Digest128>& slots, Digest128 d) {
  const std::size_t mask = slots.size() - 1;
  std::size_t i = d.lo & mask;
  for (;;) {
    Digest128& slot = slots[i];
    if (slot.hi == 0 && slot.lo == 0) {
      slot = d;
      return true;
    }
    if (slot == d) return false;
    i = (i + 1) & mask;
  }
}

void DigestSet::grow(Shard& s) {
  std::vector<Digest128> bigger(s.slots.size() * 2, Digest128{});
  for (auto& d : s.slots) {
    if (d.hi != 0 || d.lo != 0) insert_into(bigger, d);
  }
  s.slots = std::move(bigger);
}

bool DigestSet::insert(Digest128 d) {
  Shard& s = shards_[d.hi & (kShards - 1)];
  std::lock_guard<std::mutex> lock(s.mu);
  if (s.count * 10 >= s.slots.size() * 7) grow(s);
  if (insert_into(s.slots, d)) {
    ++s.count;
    return true;
  }
  return false;
}

bool DigestSet::contains(Digest128 d) const {
  const Shard& s = shards_[d.hi & (kShards - 1)];
  std::lock_guard<std::mutex> lock(s.mu);
  const std::size_t mask = s.slots.size() - 1;
  std::size_t i = d.lo & mask;
  for (;;) {
    const Digest128& slot = s.slots[i];
    if (slot.hi == 0 && slot.lo == 0) return false;
    if (slot == d) return true;
    i = (i + 1) & mask;
  }
}

std::uint64_t DigestSet::size() const {
  std::uint64_t total = 0;
  for (auto& s : shards_) {
    std::lock_guard<std::mutex> lock(s.mu);
    total += s.count;
  }
  return total;
}

}  // namespace tcnkit
