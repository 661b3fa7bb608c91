#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ruleboost/core.hpp"
#include "ruleboost/json_io.hpp"

namespace ruleboost::analysis {

// The printed κ numeral and the value of ln(1/0.95); the two disagree.
inline constexpr double kKappaPrinted = 0.223;
inline const double kKappaLogInverse095 = std::log(1.0 / 0.95);

struct AnalysisConfig {
  double kappa = kKappaPrinted;
  double pic_threshold = 0.75;
  double acb_threshold = 1.2;
  std::size_t swarm_cap = 100;
  std::uint64_t seed = 0;

  // Throws ConfigError for non-finite thresholds, negative κ or a zero cap.
  void Validate() const;
};

// Resolves "printed" / "log-inverse-0.95" or a decimal string to a κ value.
double ParseKappa(const std::string& text);

// Two rules whose antecedents differ exactly by `item`. Rule fields are
// indices into the rule list the pair was found in.
struct RulePair {
  ItemId item;
  std::size_t rule_with = 0;
  std::size_t rule_without = 0;
  double confidence_with = 0.0;
  double confidence_without = 0.0;
  double cr = 0.0;
};

// Antecedent lookup over a rule list. Throws InputError on a repeated
// antecedent.
class RuleIndex {
 public:
  explicit RuleIndex(std::span<const Rule> rules);

  std::span<const Rule> rules() const { return rules_; }
  std::optional<std::size_t> Find(const Itemset& antecedent) const;
  // Rules whose antecedent contains `item`, ascending.
  std::span<const std::size_t> Containing(ItemId item) const;
  // Items that occur in at least one antecedent, ascending.
  std::vector<ItemId> AntecedentItems() const;

 private:
  std::span<const Rule> rules_;
  std::unordered_map<Itemset, std::size_t, ItemsetHash> by_antecedent_;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_item_;
};

std::vector<RulePair> FindRulePairs(const RuleIndex& index, ItemId item);
std::vector<RulePair> FindRulePairs(std::span<const Rule> rules, ItemId item);

// Conf(with) / Conf(without). Throws UndefinedMeasureError when the
// denominator is not positive.
double ConfidenceRatio(double confidence_with, double confidence_without);
double ConfidenceRatio(const RulePair& pair);

struct AcbResult {
  std::optional<double> acb;  // nullopt when κ drops every pair
  std::size_t n_kept = 0;
};

// exp(mean ln cr) over the ratios with |ln cr| >= kappa. Throws
// UndefinedMeasureError on empty input.
AcbResult Acb(std::span<const double> crs, double kappa);
AcbResult Acb(std::span<const RulePair> pairs, double kappa);

// Share of pairs whose confidence strictly increases. Not κ-filtered.
double Pic(std::span<const double> crs);
double Pic(std::span<const RulePair> pairs);

enum class Tier { kHigh, kModerate, kLow, kUnclassified };
const char* TierName(Tier tier);

// High: both thresholds met (>=); Moderate: exactly one; Low: neither.
// Unclassified when ACB is undefined.
Tier Classify(std::optional<double> acb, double pic, const AnalysisConfig& config);

// Uniform sample without replacement of min(cap, n) values, kept in input
// order. Deterministic for a given seed.
std::vector<double> SwarmSample(std::span<const double> values, std::size_t cap,
                                std::uint64_t seed);

struct IndicatorMetrics {
  ItemId item;
  std::string feature;
  std::string bin;
  std::size_t n_pairs_total = 0;
  std::size_t n_pairs_kept = 0;
  std::optional<double> acb;
  double pic = 0.0;
  std::vector<double> cr_values;       // every pair
  std::vector<double> kept_cr_values;  // pairs that pass κ
  Tier tier = Tier::kUnclassified;

  std::string label() const { return feature + ": " + bin; }
};

// Metrics for every non-target item with at least one rule pair, sorted by
// descending ACB (undefined last), ties by item id.
std::vector<IndicatorMetrics> AnalyzeIndicators(std::span<const Rule> rules,
                                                const TransactionStore& store,
                                                const AnalysisConfig& config,
                                                std::size_t jobs = 1);

io::Json IndicatorsJson(const std::vector<IndicatorMetrics>& metrics);
io::Json PlotDataJson(const std::vector<IndicatorMetrics>& metrics,
                      const AnalysisConfig& config);
// "Indicator | ACB | PIC" text table, four decimals.
std::string ReportTable(const io::Json& indicators);

}  // namespace ruleboost::analysis
