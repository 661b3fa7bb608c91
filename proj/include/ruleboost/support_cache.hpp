#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ruleboost/core.hpp"

namespace ruleboost::miner {

// Memo from an itemset's canonical byte key (EncodeKey) to its support count.
// Safe for concurrent use; each shard has its own lock. A stored value is
// always the exact count of the keyed itemset, so lookups may be skipped or
// entries dropped at any time without changing results.
class SupportCache {
 public:
  std::optional<std::uint64_t> Get(const std::string& key) const;
  void Put(const std::string& key, std::uint64_t count);

  // Drops every entry whose itemset has fewer than `n_items` items.
  void EraseSmallerThan(std::size_t n_items);
  void Clear();

  std::size_t size() const;
  std::uint64_t hits() const { return hits_.load(std::memory_order_relaxed); }
  std::uint64_t misses() const { return misses_.load(std::memory_order_relaxed); }

  // Snapshot of all entries, decoded; for verification.
  std::vector<std::pair<Itemset, std::uint64_t>> Entries() const;

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::mutex mu;
    std::unordered_map<std::string, std::uint64_t> map;
  };
  Shard& ShardFor(const std::string& key) const;

  mutable std::array<Shard, kShards> shards_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

}  // namespace ruleboost::miner
