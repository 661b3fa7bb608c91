#include "ruleboost/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>
#include <random>
#include <thread>

#include "ruleboost/error.hpp"
#include "ruleboost/seed.hpp"

namespace ruleboost::analysis {

using io::Json;

void AnalysisConfig::Validate() const {
  if (!std::isfinite(kappa) || kappa < 0.0) throw ConfigError("kappa must be finite and >= 0");
  if (!std::isfinite(pic_threshold) || !std::isfinite(acb_threshold)) {
    throw ConfigError("tier thresholds must be finite");
  }
  if (swarm_cap < 1) throw ConfigError("swarm cap must be >= 1");
}

double ParseKappa(const std::string& text) {
  if (text == "printed") return kKappaPrinted;
  if (text == "log-inverse-0.95") return kKappaLogInverse095;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v < 0.0) {
    throw ConfigError("invalid kappa '" + text + "'");
  }
  return v;
}

RuleIndex::RuleIndex(std::span<const Rule> rules) : rules_(rules) {
  by_antecedent_.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!by_antecedent_.emplace(rules[i].antecedent, i).second) {
      throw InputError("rule list repeats an antecedent (rule " + std::to_string(i) + ")");
    }
    for (ItemId id : rules[i].antecedent) by_item_[id.value].push_back(i);
  }
}

std::optional<std::size_t> RuleIndex::Find(const Itemset& antecedent) const {
  auto it = by_antecedent_.find(antecedent);
  if (it == by_antecedent_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> RuleIndex::Containing(ItemId item) const {
  auto it = by_item_.find(item.value);
  if (it == by_item_.end()) return {};
  return it->second;
}

std::vector<ItemId> RuleIndex::AntecedentItems() const {
  std::vector<ItemId> out;
  for (const auto& [id, _] : by_item_) out.push_back(ItemId{id});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RulePair> FindRulePairs(const RuleIndex& index, ItemId item) {
  std::vector<RulePair> pairs;
  const auto rules = index.rules();
  for (std::size_t w : index.Containing(item)) {
    const auto wo = index.Find(rules[w].antecedent.Without(item));
    if (!wo) continue;
    RulePair p;
    p.item = item;
    p.rule_with = w;
    p.rule_without = *wo;
    p.confidence_with = rules[w].confidence;
    p.confidence_without = rules[*wo].confidence;
    p.cr = ConfidenceRatio(p.confidence_with, p.confidence_without);
    pairs.push_back(p);
  }
  return pairs;
}

std::vector<RulePair> FindRulePairs(std::span<const Rule> rules, ItemId item) {
  return FindRulePairs(RuleIndex(rules), item);
}

double ConfidenceRatio(double confidence_with, double confidence_without) {
  if (!(confidence_without > 0.0)) {
    throw UndefinedMeasureError("confidence ratio undefined: zero denominator");
  }
  return confidence_with / confidence_without;
}

double ConfidenceRatio(const RulePair& pair) {
  return ConfidenceRatio(pair.confidence_with, pair.confidence_without);
}

AcbResult Acb(std::span<const double> crs, double kappa) {
  if (crs.empty()) throw UndefinedMeasureError("ACB of an empty pair set");
  double sum = 0.0;
  AcbResult out;
  for (double cr : crs) {
    const double l = std::log(cr);
    if (std::abs(l) < kappa) continue;
    sum += l;
    ++out.n_kept;
  }
  if (out.n_kept > 0) out.acb = std::exp(sum / static_cast<double>(out.n_kept));
  return out;
}

AcbResult Acb(std::span<const RulePair> pairs, double kappa) {
  std::vector<double> crs;
  crs.reserve(pairs.size());
  for (const RulePair& p : pairs) crs.push_back(p.cr);
  return Acb(crs, kappa);
}

double Pic(std::span<const double> crs) {
  if (crs.empty()) throw UndefinedMeasureError("PIC of an empty pair set");
  const auto up = std::count_if(crs.begin(), crs.end(), [](double cr) { return cr > 1.0; });
  return static_cast<double>(up) / static_cast<double>(crs.size());
}

double Pic(std::span<const RulePair> pairs) {
  if (pairs.empty()) throw UndefinedMeasureError("PIC of an empty pair set");
  const auto up = std::count_if(pairs.begin(), pairs.end(), [](const RulePair& p) {
    return p.confidence_with > p.confidence_without;
  });
  return static_cast<double>(up) / static_cast<double>(pairs.size());
}

const char* TierName(Tier tier) {
  switch (tier) {
    case Tier::kHigh: return "high";
    case Tier::kModerate: return "moderate";
    case Tier::kLow: return "low";
    case Tier::kUnclassified: return "unclassified";
  }
  return "unclassified";
}

Tier Classify(std::optional<double> acb, double pic, const AnalysisConfig& config) {
  if (!acb) return Tier::kUnclassified;
  const int met = (pic >= config.pic_threshold ? 1 : 0) + (*acb >= config.acb_threshold ? 1 : 0);
  return met == 2 ? Tier::kHigh : met == 1 ? Tier::kModerate : Tier::kLow;
}

std::vector<double> SwarmSample(std::span<const double> values, std::size_t cap,
                                std::uint64_t seed) {
  if (cap < 1) throw ConfigError("swarm cap must be >= 1");
  if (values.size() <= cap) return {values.begin(), values.end()};
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates with rejection sampling for an unbiased bound.
  for (std::size_t i = 0; i < cap; ++i) {
    const std::uint64_t range = values.size() - i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t r = 0;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(idx[i], idx[i + r % range]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<double> out;
  out.reserve(cap);
  for (std::size_t i : idx) out.push_back(values[i]);
  return out;
}

std::vector<IndicatorMetrics> AnalyzeIndicators(std::span<const Rule> rules,
                                                const TransactionStore& store,
                                                const AnalysisConfig& config,
                                                std::size_t jobs) {
  config.Validate();
  const RuleIndex index(rules);
  std::vector<ItemId> items;
  for (ItemId id : index.AntecedentItems()) {
    if (!store.meta(id).is_target()) items.push_back(id);
  }

  std::vector<std::optional<IndicatorMetrics>> slots(items.size());
  auto work = [&](std::size_t i) {
    const std::vector<RulePair> pairs = FindRulePairs(index, items[i]);
    if (pairs.empty()) return;
    IndicatorMetrics m;
    m.item = items[i];
    m.feature = store.meta(items[i]).feature;
    m.bin = store.meta(items[i]).bin;
    m.n_pairs_total = pairs.size();
    for (const RulePair& p : pairs) {
      m.cr_values.push_back(p.cr);
      if (std::abs(std::log(p.cr)) >= config.kappa) m.kept_cr_values.push_back(p.cr);
    }
    const AcbResult acb = Acb(pairs, config.kappa);
    m.acb = acb.acb;
    m.n_pairs_kept = acb.n_kept;
    m.pic = Pic(pairs);
    m.tier = Classify(m.acb, m.pic, config);
    slots[i] = std::move(m);
  };
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), std::max<std::size_t>(items.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < items.size(); i = next++) work(i);
      });
    }
  }

  std::vector<IndicatorMetrics> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::stable_sort(out.begin(), out.end(), [](const IndicatorMetrics& a, const IndicatorMetrics& b) {
    if (a.acb.has_value() != b.acb.has_value()) return a.acb.has_value();
    if (a.acb && *a.acb != *b.acb) return *a.acb > *b.acb;
    return a.item < b.item;
  });
  return out;
}

namespace {

Json OptionalNumber(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json IndicatorsJson(const std::vector<IndicatorMetrics>& metrics) {
  Json out = Json::array();
  for (const IndicatorMetrics& m : metrics) {
    out.push_back({{"item_id", m.item.value},
                   {"feature", m.feature},
                   {"bin", m.bin},
                   {"label", m.label()},
                   {"n_pairs_total", m.n_pairs_total},
                   {"n_pairs_kept", m.n_pairs_kept},
                   {"acb", OptionalNumber(m.acb)},
                   {"pic", m.pic},
                   {"tier", TierName(m.tier)}});
  }
  return out;
}

Json PlotDataJson(const std::vector<IndicatorMetrics>& metrics,
                  const AnalysisConfig& config) {
  Json scatter = Json::array();
  Json order = Json::array();
  Json violin = Json::object();
  Json violin_cr = Json::object();
  Json swarm = Json::object();
  Json histogram = Json::object();
  for (const IndicatorMetrics& m : metrics) {
    const std::string label = m.label();
    order.push_back(label);
    scatter.push_back({{"label", label}, {"pic", m.pic}, {"acb", OptionalNumber(m.acb)},
                       {"tier", TierName(m.tier)}});
    Json logs = Json::array();
    for (double cr : m.kept_cr_values) logs.push_back(std::log(cr));
    violin[label] = std::move(logs);
    violin_cr[label] = m.kept_cr_values;
    swarm[label] = SwarmSample(m.kept_cr_values, config.swarm_cap,
                               DeriveSeed(config.seed, "swarm:" + label));
    histogram[label] = OptionalNumber(m.acb);
  }
  return {{"order", order},
          {"scatter", scatter},
          {"violin", violin},
          {"violin_cr", violin_cr},
          {"swarm", swarm},
          {"histogram", histogram},
          {"swarm_cap", config.swarm_cap},
          {"thresholds",
           {{"pic", config.pic_threshold}, {"acb", config.acb_threshold}, {"highlight", 1.2}}}};
}

std::string ReportTable(const Json& indicators) {
  struct Row {
    std::string label;
    std::optional<double> acb;
    double pic;
  };
  std::vector<Row> rows;
  try {
    for (const Json& j : indicators) {
      Row r{j.at("label").get<std::string>(), std::nullopt, j.at("pic").get<double>()};
      if (!j.at("acb").is_null()) r.acb = j.at("acb").get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed indicators document: ") + e.what());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.acb.has_value() != b.acb.has_value()) return a.acb.has_value();
    return a.acb && *a.acb > *b.acb;
  });
  std::string out = "Indicator | ACB | PIC\n";
  for (const Row& r : rows) {
    char line[64];
    if (r.acb) {
      std::snprintf(line, sizeof line, " | %.4f | %.4f\n", *r.acb, r.pic);
    } else {
      std::snprintf(line, sizeof line, " | n/a | %.4f\n", r.pic);
    }
    out += r.label + line;
  }
  return out;
}

}  // namespace ruleboost::analysis
