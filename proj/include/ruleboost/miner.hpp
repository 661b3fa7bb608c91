#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ruleboost/core.hpp"
#include "ruleboost/support_cache.hpp"

namespace ruleboost::miner {

// Confidence floor. When `exact` is set the floor is exact->first /
// exact->second and comparisons are done in integer arithmetic; otherwise
// `value` is compared in double precision.
struct ConfidenceFloor {
  double value = 0.0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> exact;

  static ConfidenceFloor Exact(std::uint64_t num, std::uint64_t den);
  // (target_count / n)^2
  static ConfidenceFloor BetaSquared(std::uint64_t target_count, std::uint64_t n);

  bool Admits(std::uint64_t joint_count, std::uint64_t antecedent_count) const;
};

struct MinerConfig {
  std::uint64_t min_support_count = 1;
  ConfidenceFloor min_confidence;
  ItemId target;
  // Items never used in an antecedent (missing-value bins, the other label).
  std::vector<ItemId> excluded;
  // Cap on antecedent size; the reported itemset size is antecedent + 1.
  std::optional<std::size_t> max_k;
  std::size_t jobs = 1;
  bool use_cache = true;

  // Throws ConfigError on a broken invariant or a target outside `store`.
  void Validate(const TransactionStore& store) const;
};

// target = positive label; excluded = every missing bin and the negative
// label; floor = beta squared.
MinerConfig DefaultMinerConfig(const TransactionStore& store,
                               std::uint64_t min_support_count);

// Antecedent sizes eligible for mining, in id order.
std::vector<ItemId> EligibleItems(const TransactionStore& store,
                                  const MinerConfig& config);

struct LevelEntry {
  Itemset antecedent;
  std::uint64_t joint_count = 0;       // count(antecedent ∪ {target})
  std::uint64_t antecedent_count = 0;  // count(antecedent)

  friend bool operator==(const LevelEntry&, const LevelEntry&) = default;
};

// levels[k-1] holds the k-item antecedents, each sorted lexicographically.
struct LevelTable {
  std::vector<std::vector<LevelEntry>> levels;
  std::uint64_t n = 0;
  std::uint64_t target_count = 0;

  std::size_t total() const;
  friend bool operator==(const LevelTable&, const LevelTable&) = default;
};

// Groups a sorted level by the first (size - 1) items of each antecedent.
// Antecedents join into a candidate only within a group.
class PrefixIndex {
 public:
  explicit PrefixIndex(const std::vector<LevelEntry>& level);

  // Half-open index ranges into the level, in canonical order.
  const std::vector<std::pair<std::size_t, std::size_t>>& groups() const {
    return groups_;
  }
  // Range for `prefix`, or nullopt.
  std::optional<std::pair<std::size_t, std::size_t>> Find(
      std::span<const ItemId> prefix) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> groups_;
  std::unordered_map<std::string, std::size_t> by_key_;
};

struct MiningStats {
  std::vector<std::uint64_t> candidates_per_level;
  std::uint64_t pruned_by_subset = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
};

// Every antecedent A over eligible items with count(A ∪ {target}) >=
// min_support_count, by level. Candidate k-sets come from joining (k-1)-sets
// that share a prefix; candidates with an infrequent (k-1)-subset are pruned
// using memoized supports. Output does not depend on `jobs` or `use_cache`.
LevelTable MineFrequent(const TransactionStore& store, const MinerConfig& config,
                        MiningStats* stats = nullptr,
                        SupportCache* cache = nullptr);

// A → {target} for each stored A meeting the confidence floor, preceded by
// ∅ → {target} when `include_empty_baseline`.
std::vector<Rule> GenerateRules(const LevelTable& levels, const MinerConfig& config,
                                bool include_empty_baseline = true);

// JSON-lines streams for the CLI.
std::string FrequentJsonl(const LevelTable& levels, const TransactionStore& store);
std::string RulesJsonl(const std::vector<Rule>& rules, const TransactionStore& store);
std::vector<Rule> ParseRulesJsonl(const std::string& text, const TransactionStore& store);

}  // namespace ruleboost::miner
