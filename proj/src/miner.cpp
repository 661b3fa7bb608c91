#include "ruleboost/miner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

#include "ruleboost/error.hpp"
#include "ruleboost/json_io.hpp"

namespace ruleboost::miner {

using io::Json;

ConfidenceFloor ConfidenceFloor::Exact(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw ConfigError("confidence floor must lie in [0,1]");
  ConfidenceFloor f;
  f.value = static_cast<double>(num) / static_cast<double>(den);
  f.exact = {{num, den}};
  return f;
}

ConfidenceFloor ConfidenceFloor::BetaSquared(std::uint64_t target_count,
                                             std::uint64_t n) {
  if (n == 0) throw ConfigError("beta-squared floor needs a non-empty store");
  return Exact(target_count * target_count, n * n);
}

bool ConfidenceFloor::Admits(std::uint64_t joint_count,
                             std::uint64_t antecedent_count) const {
  if (antecedent_count == 0) return false;
  if (exact) {
    using u128 = unsigned __int128;
    return static_cast<u128>(joint_count) * exact->second >=
           static_cast<u128>(exact->first) * antecedent_count;
  }
  return static_cast<double>(joint_count) / static_cast<double>(antecedent_count) >=
         value;
}

void MinerConfig::Validate(const TransactionStore& store) const {
  if (min_support_count < 1) throw ConfigError("min_support_count must be >= 1");
  if (!(min_confidence.value >= 0.0 && min_confidence.value <= 1.0)) {
    throw ConfigError("min_confidence must lie in [0,1]");
  }
  if (target.value >= store.vocabulary_size()) {
    throw ConfigError("target item " + std::to_string(target.value) +
                      " is not in the vocabulary");
  }
  if (std::find(excluded.begin(), excluded.end(), target) != excluded.end()) {
    throw ConfigError("target item is listed as excluded");
  }
  for (ItemId id : excluded) {
    if (id.value >= store.vocabulary_size()) {
      throw ConfigError("excluded item " + std::to_string(id.value) +
                        " is not in the vocabulary");
    }
  }
  if (max_k && *max_k < 1) throw ConfigError("max_k must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

MinerConfig DefaultMinerConfig(const TransactionStore& store,
                               std::uint64_t min_support_count) {
  MinerConfig c;
  c.min_support_count = min_support_count;
  c.target = store.positive_target();
  for (std::uint32_t i = 0; i < store.vocabulary_size(); ++i) {
    const ItemMeta& m = store.vocabulary()[i];
    if (m.is_missing || m.target == TargetClass::kNegative) c.excluded.push_back(ItemId{i});
  }
  c.min_confidence =
      ConfidenceFloor::BetaSquared(store.Count(Itemset{c.target}), store.size());
  return c;
}

std::vector<ItemId> EligibleItems(const TransactionStore& store,
                                  const MinerConfig& config) {
  std::vector<ItemId> out;
  for (std::uint32_t i = 0; i < store.vocabulary_size(); ++i) {
    const ItemId id{i};
    if (id == config.target) continue;
    if (std::find(config.excluded.begin(), config.excluded.end(), id) !=
        config.excluded.end()) {
      continue;
    }
    out.push_back(id);
  }
  return out;
}

std::size_t LevelTable::total() const {
  std::size_t t = 0;
  for (const auto& l : levels) t += l.size();
  return t;
}

PrefixIndex::PrefixIndex(const std::vector<LevelEntry>& level) {
  std::size_t begin = 0;
  while (begin < level.size()) {
    const auto& a = level[begin].antecedent.items();
    const auto prefix = a.first(a.size() - 1);
    std::size_t end = begin + 1;
    while (end < level.size()) {
      const auto b = level[end].antecedent.items().first(a.size() - 1);
      if (!std::equal(prefix.begin(), prefix.end(), b.begin())) break;
      ++end;
    }
    by_key_.emplace(EncodeKey(prefix), groups_.size());
    groups_.emplace_back(begin, end);
    begin = end;
  }
}

std::optional<std::pair<std::size_t, std::size_t>> PrefixIndex::Find(
    std::span<const ItemId> prefix) const {
  auto it = by_key_.find(EncodeKey(prefix));
  if (it == by_key_.end()) return std::nullopt;
  return groups_[it->second];
}

namespace {

// Flat per-level storage: entries plus their antecedent tidsets, W words each.
struct Level {
  std::vector<LevelEntry> entries;
  std::vector<std::uint64_t> bits;
};

class Miner {
 public:
  Miner(const TransactionStore& store, const MinerConfig& config, SupportCache* cache)
      : store_(store), config_(config), cache_(cache),
        words_((store.size() + 63) / 64) {
    target_bits_ = Copy(store.tidset(config.target));
  }

  LevelTable Run(MiningStats* stats) {
    LevelTable table;
    table.n = store_.size();
    table.target_count = store_.Count(Itemset{config_.target});
    if (table.target_count < config_.min_support_count) return table;

    const std::vector<ItemId> eligible = EligibleItems(store_, config_);
    item_bits_.assign(store_.vocabulary_size() * words_, 0);
    for (ItemId id : eligible) {
      const auto w = Copy(store_.tidset(id));
      std::copy(w.begin(), w.end(), item_bits_.begin() + id.value * words_);
    }

    Level current;
    std::uint64_t candidates = 0;
    for (ItemId id : eligible) {
      ++candidates;
      const std::uint64_t* b = &item_bits_[id.value * words_];
      const std::uint64_t ant = PopCount(b);
      const std::uint64_t joint = AndCount(b, target_bits_.data());
      Remember(Itemset{id}, joint);
      if (joint < config_.min_support_count) continue;
      current.entries.push_back({Itemset{id}, joint, ant});
      current.bits.insert(current.bits.end(), b, b + words_);
    }
    if (stats) stats->candidates_per_level.push_back(candidates);

    while (!current.entries.empty()) {
      const std::size_t size = current.entries.front().antecedent.size();
      table.levels.push_back(current.entries);
      if (config_.max_k && size >= *config_.max_k) break;
      Level next = Extend(current, stats);
      if (cache_) cache_->EraseSmallerThan(size + 2);
      current = std::move(next);
    }
    if (stats && cache_) {
      stats->cache_hits = cache_->hits();
      stats->cache_misses = cache_->misses();
    }
    return table;
  }

 private:
  struct GroupResult {
    Level level;
    std::uint64_t candidates = 0;
    std::uint64_t pruned = 0;
  };

  std::vector<std::uint64_t> Copy(const Tidset& t) const {
    std::vector<std::uint64_t> w(words_, 0);
    for (std::size_t i = 0; i < t.bits(); ++i) {
      if (t.test(i)) w[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return w;
  }

  std::uint64_t PopCount(const std::uint64_t* a) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i]));
    return c;
  }

  std::uint64_t AndCount(const std::uint64_t* a, const std::uint64_t* b) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) {
      c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    }
    return c;
  }

  static std::string JointKey(const Itemset& antecedent, ItemId target) {
    return EncodeKey(antecedent.With(target).items());
  }

  void Remember(const Itemset& antecedent, std::uint64_t joint) {
    if (cache_) cache_->Put(JointKey(antecedent, config_.target), joint);
  }

  // count(antecedent ∪ {target}), through the memo when enabled.
  std::uint64_t JointCount(const Itemset& antecedent) {
    const Itemset joint = antecedent.With(config_.target);
    if (cache_) {
      const std::string key = EncodeKey(joint.items());
      if (auto hit = cache_->Get(key)) return *hit;
      const std::uint64_t c = store_.Count(joint);
      cache_->Put(key, c);
      return c;
    }
    return store_.Count(joint);
  }

  GroupResult JoinGroup(const Level& prev, std::size_t begin, std::size_t end) {
    GroupResult out;
    std::vector<std::uint64_t> ant(words_);
    for (std::size_t i = begin; i < end; ++i) {
      const Itemset& left = prev.entries[i].antecedent;
      const std::uint64_t* left_bits = &prev.bits[i * words_];
      for (std::size_t j = i + 1; j < end; ++j) {
        const ItemId last = prev.entries[j].antecedent.back();
        std::vector<ItemId> items(left.begin(), left.end());
        items.push_back(last);
        Itemset candidate = Itemset::FromSorted(std::move(items));
        ++out.candidates;

        // The two join parents are frequent; check the other (k-1)-subsets.
        bool pruned = false;
        for (std::size_t p = 0; p + 2 < candidate.size(); ++p) {
          if (JointCount(candidate.Without(candidate[p])) < config_.min_support_count) {
            pruned = true;
            break;
          }
        }
        if (pruned) {
          ++out.pruned;
          continue;
        }

        const std::uint64_t* last_bits = &item_bits_[last.value * words_];
        std::uint64_t ant_count = 0;
        std::uint64_t joint = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          ant[w] = left_bits[w] & last_bits[w];
          ant_count += static_cast<std::uint64_t>(std::popcount(ant[w]));
          joint += static_cast<std::uint64_t>(std::popcount(ant[w] & target_bits_[w]));
        }
        Remember(candidate, joint);
        if (joint < config_.min_support_count) continue;
        out.level.entries.push_back({std::move(candidate), joint, ant_count});
        out.level.bits.insert(out.level.bits.end(), ant.begin(), ant.end());
      }
    }
    return out;
  }

  Level Extend(const Level& prev, MiningStats* stats) {
    const PrefixIndex index(prev.entries);
    const auto& groups = index.groups();
    std::vector<GroupResult> results(groups.size());
    const std::size_t workers = std::min(config_.jobs, std::max<std::size_t>(1, groups.size()));
    if (workers <= 1) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        results[g] = JoinGroup(prev, groups[g].first, groups[g].second);
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t g = next++; g < groups.size(); g = next++) {
            results[g] = JoinGroup(prev, groups[g].first, groups[g].second);
          }
        });
      }
    }
    Level out;
    std::uint64_t candidates = 0;
    for (GroupResult& r : results) {
      candidates += r.candidates;
      if (stats) stats->pruned_by_subset += r.pruned;
      std::move(r.level.entries.begin(), r.level.entries.end(),
                std::back_inserter(out.entries));
      out.bits.insert(out.bits.end(), r.level.bits.begin(), r.level.bits.end());
    }
    if (stats) stats->candidates_per_level.push_back(candidates);
    return out;
  }

  const TransactionStore& store_;
  const MinerConfig& config_;
  SupportCache* cache_;
  std::size_t words_;
  std::vector<std::uint64_t> target_bits_;
  std::vector<std::uint64_t> item_bits_;
};

Json ItemsJson(const Itemset& s, const TransactionStore& store) {
  Json out = Json::array();
  for (ItemId id : s) {
    const ItemMeta& m = store.meta(id);
    out.push_back({{"feature", m.feature}, {"bin", m.bin}});
  }
  return out;
}

Json IdsJson(const Itemset& s) {
  Json out = Json::array();
  for (ItemId id : s) out.push_back(id.value);
  return out;
}

}  // namespace

LevelTable MineFrequent(const TransactionStore& store, const MinerConfig& config,
                        MiningStats* stats, SupportCache* cache) {
  config.Validate(store);
  if (store.size() == 0) throw InputError("cannot mine an empty store");
  SupportCache local;
  SupportCache* memo = config.use_cache ? (cache ? cache : &local) : nullptr;
  return Miner(store, config, memo).Run(stats);
}

std::vector<Rule> GenerateRules(const LevelTable& levels, const MinerConfig& config,
                                bool include_empty_baseline) {
  std::vector<Rule> rules;
  if (include_empty_baseline && levels.target_count > 0) {
    rules.push_back(MakeRule(Itemset{}, config.target, levels.target_count, levels.n,
                             levels.target_count, levels.n));
  }
  for (const auto& level : levels.levels) {
    for (const LevelEntry& e : level) {
      if (!config.min_confidence.Admits(e.joint_count, e.antecedent_count)) continue;
      rules.push_back(MakeRule(e.antecedent, config.target, e.joint_count,
                               e.antecedent_count, levels.target_count, levels.n));
    }
  }
  return rules;
}

std::string FrequentJsonl(const LevelTable& levels, const TransactionStore& store) {
  std::string out;
  const double n = static_cast<double>(levels.n);
  const double beta = static_cast<double>(levels.target_count) / n;
  for (const auto& level : levels.levels) {
    for (const LevelEntry& e : level) {
      const double conf = static_cast<double>(e.joint_count) /
                          static_cast<double>(e.antecedent_count);
      const Json line = {{"antecedent", ItemsJson(e.antecedent, store)},
                         {"antecedent_ids", IdsJson(e.antecedent)},
                         {"antecedent_size", e.antecedent.size()},
                         {"itemset_size", e.antecedent.size() + 1},
                         {"joint_count", e.joint_count},
                         {"antecedent_count", e.antecedent_count},
                         {"support", static_cast<double>(e.joint_count) / n},
                         {"confidence", conf},
                         {"lift", conf / beta}};
      out += io::Dump(line, -1);
      out += '\n';
    }
  }
  return out;
}

std::string RulesJsonl(const std::vector<Rule>& rules, const TransactionStore& store) {
  std::string out;
  for (const Rule& r : rules) {
    const ItemMeta& c = store.meta(r.consequent);
    const Json line = {{"antecedent", ItemsJson(r.antecedent, store)},
                       {"antecedent_ids", IdsJson(r.antecedent)},
                       {"consequent", {{"feature", c.feature}, {"bin", c.bin}}},
                       {"consequent_id", r.consequent.value},
                       {"joint_count", r.joint_count},
                       {"antecedent_count", r.antecedent_count},
                       {"support", r.support},
                       {"confidence", r.confidence},
                       {"lift", r.lift}};
    out += io::Dump(line, -1);
    out += '\n';
  }
  return out;
}

std::vector<Rule> ParseRulesJsonl(const std::string& text, const TransactionStore& store) {
  std::vector<Rule> rules;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      std::vector<ItemId> ids;
      for (const Json& id : j.at("antecedent_ids")) ids.push_back(ItemId{id.get<std::uint32_t>()});
      Itemset antecedent(std::move(ids));
      store.CheckValid(antecedent);
      const ItemId consequent{j.at("consequent_id").get<std::uint32_t>()};
      const std::uint64_t joint = j.at("joint_count").get<std::uint64_t>();
      const std::uint64_t ant = j.at("antecedent_count").get<std::uint64_t>();
      if (ant == 0 || joint > ant) throw InputError("inconsistent counts");
      rules.push_back(MakeRule(std::move(antecedent), consequent, joint, ant,
                               store.Count(Itemset{consequent}), store.size()));
    } catch (const Json::exception& e) {
      throw InputError("rules line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("rules line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rules;
}

}  // namespace ruleboost::miner
