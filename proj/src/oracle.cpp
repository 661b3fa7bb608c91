#include "ruleboost/oracle.hpp"

#include <algorithm>

#include "ruleboost/error.hpp"

namespace ruleboost::miner {

namespace {

std::uint64_t ScanCount(const TransactionStore& store, const std::vector<ItemId>& items) {
  std::uint64_t c = 0;
  for (const Itemset& t : store.transactions()) {
    bool all = true;
    for (ItemId id : items) {
      if (std::find(t.begin(), t.end(), id) == t.end()) {
        all = false;
        break;
      }
    }
    if (all) ++c;
  }
  return c;
}

// Independent floor check: rational via cross-multiplication, else double.
bool MeetsConfidence(const ConfidenceFloor& floor, std::uint64_t joint,
                     std::uint64_t ant) {
  if (ant == 0) return false;
  if (floor.exact) {
    const long double lhs = static_cast<long double>(joint) * floor.exact->second;
    const long double rhs = static_cast<long double>(floor.exact->first) * ant;
    return lhs >= rhs;
  }
  return static_cast<double>(joint) / static_cast<double>(ant) >= floor.value;
}

template <typename Visit>
void EnumerateFrequent(const TransactionStore& store, const MinerConfig& config,
                       Visit&& visit) {
  const std::vector<ItemId> eligible = EligibleItems(store, config);
  if (eligible.size() > kBruteForceMaxItems) {
    throw InputError("brute-force miner is limited to " +
                     std::to_string(kBruteForceMaxItems) + " eligible items");
  }
  const std::uint64_t subsets = std::uint64_t{1} << eligible.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::vector<ItemId> antecedent;
    for (std::size_t b = 0; b < eligible.size(); ++b) {
      if (mask >> b & 1U) antecedent.push_back(eligible[b]);
    }
    if (config.max_k && antecedent.size() > *config.max_k) continue;
    std::vector<ItemId> joint = antecedent;
    joint.push_back(config.target);
    const std::uint64_t joint_count = ScanCount(store, joint);
    if (joint_count < config.min_support_count) continue;
    visit(antecedent, joint_count, ScanCount(store, antecedent));
  }
}

}  // namespace

LevelTable BruteForceMine(const TransactionStore& store, const MinerConfig& config) {
  config.Validate(store);
  LevelTable table;
  table.n = store.size();
  table.target_count = ScanCount(store, {config.target});
  EnumerateFrequent(store, config, [&](const std::vector<ItemId>& a, std::uint64_t joint,
                                       std::uint64_t ant) {
    if (table.levels.size() < a.size()) table.levels.resize(a.size());
    table.levels[a.size() - 1].push_back({Itemset(a), joint, ant});
  });
  for (auto& level : table.levels) {
    std::sort(level.begin(), level.end(), [](const LevelEntry& x, const LevelEntry& y) {
      return x.antecedent < y.antecedent;
    });
  }
  return table;
}

std::vector<Rule> BruteForceRules(const TransactionStore& store, const MinerConfig& config,
                                  bool include_empty_baseline) {
  config.Validate(store);
  const std::uint64_t n = store.size();
  const std::uint64_t target_count = ScanCount(store, {config.target});
  std::vector<Rule> body;
  EnumerateFrequent(store, config, [&](const std::vector<ItemId>& a, std::uint64_t joint,
                                       std::uint64_t ant) {
    if (!MeetsConfidence(config.min_confidence, joint, ant)) return;
    body.push_back(MakeRule(Itemset(a), config.target, joint, ant, target_count, n));
  });
  std::sort(body.begin(), body.end(), [](const Rule& x, const Rule& y) {
    if (x.antecedent.size() != y.antecedent.size()) {
      return x.antecedent.size() < y.antecedent.size();
    }
    return x.antecedent < y.antecedent;
  });
  std::vector<Rule> rules;
  if (include_empty_baseline && target_count > 0) {
    rules.push_back(MakeRule(Itemset{}, config.target, target_count, n, target_count, n));
  }
  rules.insert(rules.end(), body.begin(), body.end());
  return rules;
}

}  // namespace ruleboost::miner
