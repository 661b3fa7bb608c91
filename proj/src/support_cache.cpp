#include "ruleboost/support_cache.hpp"

#include <functional>

namespace ruleboost::miner {

SupportCache::Shard& SupportCache::ShardFor(const std::string& key) const {
  return shards_[std::hash<std::string>{}(key) % kShards];
}

std::optional<std::uint64_t> SupportCache::Get(const std::string& key) const {
  Shard& s = ShardFor(key);
  std::lock_guard lock(s.mu);
  auto it = s.map.find(key);
  if (it == s.map.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

void SupportCache::Put(const std::string& key, std::uint64_t count) {
  Shard& s = ShardFor(key);
  std::lock_guard lock(s.mu);
  s.map[key] = count;
}

void SupportCache::EraseSmallerThan(std::size_t n_items) {
  for (Shard& s : shards_) {
    std::lock_guard lock(s.mu);
    std::erase_if(s.map, [&](const auto& kv) { return kv.first.size() < 4 * n_items; });
  }
}

void SupportCache::Clear() {
  for (Shard& s : shards_) {
    std::lock_guard lock(s.mu);
    s.map.clear();
  }
}

std::size_t SupportCache::size() const {
  std::size_t n = 0;
  for (Shard& s : shards_) {
    std::lock_guard lock(s.mu);
    n += s.map.size();
  }
  return n;
}

std::vector<std::pair<Itemset, std::uint64_t>> SupportCache::Entries() const {
  std::vector<std::pair<Itemset, std::uint64_t>> out;
  for (Shard& s : shards_) {
    std::lock_guard lock(s.mu);
    for (const auto& [key, count] : s.map) {
      std::vector<ItemId> items;
      for (std::size_t i = 0; i + 3 < key.size(); i += 4) {
        const auto b = [&](std::size_t j) {
          return static_cast<std::uint32_t>(static_cast<unsigned char>(key[i + j]));
        };
        items.push_back(ItemId{b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24)});
      }
      out.emplace_back(Itemset::FromSorted(std::move(items)), count);
    }
  }
  return out;
}

}  // namespace ruleboost::miner
