#pragma once

#include <vector>

#include "ruleboost/core.hpp"
#include "ruleboost/miner.hpp"

namespace ruleboost::miner {

inline constexpr std::size_t kBruteForceMaxItems = 20;

// Reference miner: enumerates every subset of the eligible items and counts
// it with a linear scan over the transactions. Same output contract as
// MineFrequent. Throws InputError above kBruteForceMaxItems eligible items.
LevelTable BruteForceMine(const TransactionStore& store, const MinerConfig& config);

// Reference rule set: every enumerated antecedent whose joint count meets the
// support floor and whose confidence meets the confidence floor, plus the
// empty-antecedent baseline when requested. Ordered like GenerateRules.
std::vector<Rule> BruteForceRules(const TransactionStore& store,
                                  const MinerConfig& config,
                                  bool include_empty_baseline = true);

}  // namespace ruleboost::miner
