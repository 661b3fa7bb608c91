#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ruleboost/core.hpp"
#include "ruleboost/miner.hpp"

namespace ruleboost::testing {

// T1={a,M} T2={a,b,M} T3={a,B} T4={b,B} T5={a,b,M}; B is the benign label.
struct Toy {
  ItemId a{0};
  ItemId b{1};
  ItemId M{2};
  ItemId B{3};
};

inline TransactionStore ToyStore() {
  std::vector<ItemMeta> vocab = {
      {"A", "a", false, TargetClass::kNone},
      {"B", "b", false, TargetClass::kNone},
      {"Pathology", "malignant", false, TargetClass::kPositive},
      {"Pathology", "benign", false, TargetClass::kNegative},
  };
  const Toy t;
  std::vector<Itemset> tx = {
      Itemset{t.a, t.M}, Itemset{t.a, t.b, t.M}, Itemset{t.a, t.B},
      Itemset{t.b, t.B}, Itemset{t.a, t.b, t.M},
  };
  return TransactionStore(std::move(vocab), std::move(tx));
}

struct RandomStoreShape {
  int min_features = 1;
  int max_features = 6;
  int max_bins = 3;
  double p_missing_bin = 0.3;  // chance a feature carries an N/A bin
  double p_absent = 0.1;       // chance a transaction omits a feature
  std::size_t min_rows = 1;
  std::size_t max_rows = 200;
  std::size_t max_eligible = 12;
};

// A store with clinical-style shape: every feature has a few bins, some an N/A
// bin, and the label skews bin choice so rules carry signal.
inline TransactionStore RandomStore(std::mt19937_64& rng,
                                    const RandomStoreShape& shape = {}) {
  std::uniform_int_distribution<int> n_feat(shape.min_features, shape.max_features);
  std::uniform_int_distribution<int> n_bins(1, shape.max_bins);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<ItemMeta> vocab;
  std::vector<std::vector<std::uint32_t>> feature_items;
  std::size_t eligible = 0;
  const int features = n_feat(rng);
  for (int f = 0; f < features && eligible < shape.max_eligible; ++f) {
    std::vector<std::uint32_t> ids;
    const int bins = n_bins(rng);
    for (int b = 0; b < bins && eligible < shape.max_eligible; ++b, ++eligible) {
      ids.push_back(static_cast<std::uint32_t>(vocab.size()));
      vocab.push_back({"f" + std::to_string(f), "b" + std::to_string(b), false,
                       TargetClass::kNone});
    }
    if (unit(rng) < shape.p_missing_bin) {
      ids.push_back(static_cast<std::uint32_t>(vocab.size()));
      vocab.push_back({"f" + std::to_string(f), "N/A", true, TargetClass::kNone});
    }
    feature_items.push_back(std::move(ids));
  }
  const std::uint32_t pos = static_cast<std::uint32_t>(vocab.size());
  vocab.push_back({"Label", "malignant", false, TargetClass::kPositive});
  vocab.push_back({"Label", "benign", false, TargetClass::kNegative});

  std::uniform_int_distribution<std::size_t> n_rows(shape.min_rows, shape.max_rows);
  const std::size_t rows = n_rows(rng);
  const double prevalence = 0.15 + 0.6 * unit(rng);
  std::vector<Itemset> tx;
  tx.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool malignant = unit(rng) < prevalence;
    std::vector<ItemId> items;
    items.push_back(ItemId{malignant ? pos : pos + 1});
    for (const auto& ids : feature_items) {
      if (unit(rng) < shape.p_absent) continue;
      // Label-dependent skew toward the low or high end of the feature.
      const double u = unit(rng);
      const double skewed = malignant ? u * u : 1.0 - (1.0 - u) * (1.0 - u);
      std::size_t pick = static_cast<std::size_t>(skewed * static_cast<double>(ids.size()));
      pick = std::min(pick, ids.size() - 1);
      items.push_back(ItemId{ids[pick]});
    }
    tx.emplace_back(std::move(items));
  }
  return TransactionStore(std::move(vocab), std::move(tx));
}

// Same transactions in a shuffled order.
inline TransactionStore Shuffled(const TransactionStore& store, std::mt19937_64& rng) {
  std::vector<Itemset> tx = store.transactions();
  std::shuffle(tx.begin(), tx.end(), rng);
  return TransactionStore(store.vocabulary(), std::move(tx));
}

inline std::size_t TargetCount(const TransactionStore& store) {
  return store.tidset(store.positive_target()).count();
}

// γ drawn from {0, β², 0.5}.
inline miner::ConfidenceFloor RandomFloor(std::mt19937_64& rng,
                                          const TransactionStore& store) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return miner::ConfidenceFloor::Exact(0, 1);
    case 1:
      return miner::ConfidenceFloor::BetaSquared(TargetCount(store), store.size());
    default:
      return miner::ConfidenceFloor::Exact(1, 2);
  }
}

inline miner::MinerConfig RandomMinerConfig(std::mt19937_64& rng,
                                            const TransactionStore& store) {
  const std::uint64_t eta = std::uniform_int_distribution<std::uint64_t>(1, 20)(rng);
  miner::MinerConfig config = miner::DefaultMinerConfig(store, eta);
  config.min_confidence = RandomFloor(rng, store);
  return config;
}

inline std::vector<double> RandomRatios(std::mt19937_64& rng, std::size_t max_n = 40) {
  std::uniform_int_distribution<std::size_t> n(1, max_n);
  std::normal_distribution<double> log_cr(0.0, 0.8);
  std::vector<double> out(n(rng));
  for (double& v : out) v = std::exp(log_cr(rng));
  return out;
}

inline bool RelClose(double a, double b, double tol = 1e-12) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace ruleboost::testing
