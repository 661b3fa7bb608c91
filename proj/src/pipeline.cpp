#include "ruleboost/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>

#include "ruleboost/csv.hpp"
#include "ruleboost/error.hpp"

namespace ruleboost::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

bool IsDigits(const std::string& s) {
  return !s.empty() &&
         s.find_first_not_of("0123456789") == std::string::npos;
}

std::uint64_t ParseCount(const std::string& s, const std::string& what) {
  if (!IsDigits(s) || s.size() > 19) {
    throw ConfigError(what + ": expected a non-negative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

double ParseNumber(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) {
    throw ConfigError(what + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::string OutPath(const PipelineConfig& config, const char* name) {
  return (fs::path(config.out_dir) / name).string();
}

void EnsureOutDir(const PipelineConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw InputError("cannot create output directory '" + config.out_dir +
                     "': " + ec.message());
  }
}

std::string ReadUpstream(const PipelineConfig& config, const char* name,
                         const char* producer) {
  const std::string path = OutPath(config, name);
  if (!fs::exists(path)) {
    throw InputError("missing upstream artifact " + std::string(name) + " in '" +
                     config.out_dir + "' (run '" + producer + "' first)");
  }
  return io::ReadText(path);
}

Json ReadManifest(const PipelineConfig& config) {
  const std::string path = OutPath(config, kManifestJson);
  if (!fs::exists(path)) return Json::object();
  Json doc = io::ReadJson(path);
  if (!doc.is_object()) throw InputError(path + ": manifest is not an object");
  return doc;
}

// An upstream artifact must match the digest its producing stage recorded.
void CheckFresh(const Json& manifest, const char* section, const char* name,
                const std::string& bytes) {
  if (!manifest.contains(section)) return;
  const Json& outputs = manifest[section].value("outputs", Json::object());
  if (!outputs.contains(name)) return;
  if (outputs[name].get<std::string>() != io::Sha256Hex(bytes)) {
    throw InputError("stale upstream artifact " + std::string(name) +
                     ": contents differ from the digest recorded by the '" +
                     section + "' stage");
  }
}

void WriteManifest(const PipelineConfig& config, Json manifest) {
  manifest["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  io::WriteText(OutPath(config, kManifestJson), io::Dump(manifest) + "\n");
}

void RecordTiming(const PipelineConfig& config, const char* stage,
                  double seconds, const Json& stats) {
  const std::string path = OutPath(config, kTimingJson);
  Json doc = Json::object();
  if (fs::exists(path)) {
    try {
      doc = io::ReadJson(path);
    } catch (const InputError&) {
      doc = Json::object();
    }
    if (!doc.is_object()) doc = Json::object();
  }
  doc[stage] = {{"seconds", seconds}, {"stats", stats}};
  io::WriteText(path, io::Dump(doc) + "\n");
}

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

TransactionStore LoadStore(const PipelineConfig& config, const Json& manifest,
                           std::string* bytes_out = nullptr) {
  const std::string bytes = ReadUpstream(config, kStoreJson, "bin");
  CheckFresh(manifest, "binning", kStoreJson, bytes);
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(kStoreJson) + ": " + e.what());
  }
  if (bytes_out) *bytes_out = bytes;
  return binning::StoreFromJson(doc);
}

Json InputDigest(const std::string& path) {
  return {{"path", path}, {"sha256", io::Sha256Hex(io::ReadText(path))}};
}

}  // namespace

// ---------------------------------------------------------------------------

MinSupport MinSupport::Count(std::uint64_t count) {
  MinSupport m;
  m.value_ = count;
  return m;
}

MinSupport MinSupport::Parse(const std::string& text) {
  MinSupport m;
  if (IsDigits(text)) {
    m.value_ = ParseCount(text, "min_support");
  } else if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::uint64_t num = ParseCount(text.substr(0, slash), "min_support");
    const std::uint64_t den = ParseCount(text.substr(slash + 1), "min_support");
    if (den == 0 || num > den) {
      throw ConfigError("min_support: fraction '" + text + "' is outside (0, 1]");
    }
    m.value_ = Ratio{num, den};
  } else {
    const double v = ParseNumber(text, "min_support");
    if (!(v > 0.0 && v <= 1.0)) {
      throw ConfigError("min_support: fraction " + text + " is outside (0, 1]");
    }
    m.value_ = v;
  }
  if (const auto* c = std::get_if<std::uint64_t>(&m.value_); c && *c == 0) {
    throw ConfigError("min_support: count must be at least 1");
  }
  if (const auto* r = std::get_if<Ratio>(&m.value_); r && r->num == 0) {
    throw ConfigError("min_support: fraction must be positive");
  }
  return m;
}

MinSupport MinSupport::FromJson(const Json& j) {
  if (j.is_string()) return Parse(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.get<std::int64_t>() < 1) throw ConfigError("min_support: count must be at least 1");
    return Count(j.get<std::uint64_t>());
  }
  if (j.is_number_float()) return Parse(FormatDouble(j.get<double>()));
  throw ConfigError("min_support: expected a count, fraction or \"a/b\"");
}

std::uint64_t MinSupport::Resolve(std::uint64_t n) const {
  std::uint64_t count = 0;
  if (const auto* c = std::get_if<std::uint64_t>(&value_)) {
    count = *c;
  } else if (const auto* r = std::get_if<Ratio>(&value_)) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(r->num) * n;
    count = static_cast<std::uint64_t>((prod + r->den - 1) / r->den);
  } else {
    const double x = std::get<double>(value_);
    count = static_cast<std::uint64_t>(std::ceil(x * static_cast<double>(n) - 1e-9));
  }
  return std::max<std::uint64_t>(count, 1);
}

std::string MinSupport::ToString() const {
  if (const auto* c = std::get_if<std::uint64_t>(&value_)) return std::to_string(*c);
  if (const auto* r = std::get_if<Ratio>(&value_)) {
    return std::to_string(r->num) + "/" + std::to_string(r->den);
  }
  return FormatDouble(std::get<double>(value_));
}

ConfidenceSetting ConfidenceSetting::Parse(const std::string& text) {
  ConfidenceSetting s;
  if (text == "beta-squared") return s;
  const double v = ParseNumber(text, "min_confidence");
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("min_confidence: " + text + " is outside [0, 1]");
  }
  s.value_ = v;
  return s;
}

ConfidenceSetting ConfidenceSetting::FromJson(const Json& j) {
  if (j.is_string()) return Parse(j.get<std::string>());
  if (j.is_number()) return Parse(FormatDouble(j.get<double>()));
  throw ConfigError("min_confidence: expected a number or \"beta-squared\"");
}

miner::ConfidenceFloor ConfidenceSetting::Resolve(std::uint64_t target_count,
                                                  std::uint64_t n) const {
  if (!value_) return miner::ConfidenceFloor::BetaSquared(target_count, n);
  miner::ConfidenceFloor floor;
  floor.value = *value_;
  return floor;
}

std::string ConfidenceSetting::ToString() const {
  return value_ ? FormatDouble(*value_) : std::string("beta-squared");
}

// ---------------------------------------------------------------------------

PipelineConfig PipelineConfig::FromJson(const Json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  static const std::vector<std::string> kSections = {"inputs", "binning", "miner",
                                                     "analysis", "seed", "out"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(kSections.begin(), kSections.end(), key) == kSections.end()) {
      throw ConfigError("config: unknown section '" + key + "'");
    }
  }
  PipelineConfig config;
  std::string section;
  try {
    section = "inputs";
    if (doc.contains("inputs")) {
      const Json& in = doc.at("inputs");
      if (in.contains("cases")) config.cases_path = Resolve(base_dir, in.at("cases").get<std::string>());
      if (in.contains("tsh") && !in.at("tsh").is_null()) {
        config.tsh_path = Resolve(base_dir, in.at("tsh").get<std::string>());
      }
    }
    section = "binning";
    if (doc.contains("binning")) {
      const Json& b = doc.at("binning");
      config.binning = b.is_string()
                           ? binning::ParseBinningConfig(io::ReadJson(
                                 Resolve(base_dir, b.get<std::string>())))
                           : binning::ParseBinningConfig(b);
    }
    section = "miner";
    if (doc.contains("miner")) {
      const Json& m = doc.at("miner");
      if (m.contains("min_support")) config.min_support = MinSupport::FromJson(m.at("min_support"));
      if (m.contains("min_confidence")) {
        config.min_confidence = ConfidenceSetting::FromJson(m.at("min_confidence"));
      }
      if (m.contains("max_k") && !m.at("max_k").is_null()) {
        config.max_k = m.at("max_k").get<std::size_t>();
      }
      if (m.contains("include_baseline")) config.include_baseline = m.at("include_baseline").get<bool>();
    }
    section = "analysis";
    if (doc.contains("analysis")) {
      const Json& a = doc.at("analysis");
      if (a.contains("kappa")) {
        const Json& k = a.at("kappa");
        config.analysis.kappa = k.is_string() ? analysis::ParseKappa(k.get<std::string>())
                                              : k.get<double>();
      }
      if (a.contains("pic_threshold")) config.analysis.pic_threshold = a.at("pic_threshold").get<double>();
      if (a.contains("acb_threshold")) config.analysis.acb_threshold = a.at("acb_threshold").get<double>();
      if (a.contains("swarm_cap")) config.analysis.swarm_cap = a.at("swarm_cap").get<std::size_t>();
    }
    section = "seed";
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    section = "out";
    if (doc.contains("out")) config.out_dir = Resolve(base_dir, doc.at("out").get<std::string>());
  } catch (const Json::exception& e) {
    throw ConfigError("config section '" + section + "': " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError("config section '" + section + "': " + e.what());
  } catch (const InputError& e) {
    throw ConfigError("config section '" + section + "': " + e.what());
  }
  return config;
}

// ---------------------------------------------------------------------------

void RunBin(const PipelineConfig& config) {
  Stopwatch watch;
  if (!config.binning) throw ConfigError("config: missing 'binning' section");
  if (config.cases_path.empty()) throw ConfigError("config: missing inputs.cases path");
  const binning::BinningConfig& bc = *config.binning;

  const csv::Table cases = csv::ReadFile(config.cases_path);
  const binning::RawTable raw = binning::RawTable::FromCsv(cases, bc.na_tokens);
  std::map<std::string, binning::TshSeries> tsh;
  if (!config.tsh_path.empty()) {
    tsh = binning::LoadTshSeries(csv::ReadFile(config.tsh_path), bc.na_tokens);
  }
  const binning::BinnedDataset binned = binning::BinDataset(raw, tsh, bc, config.seed);
  const TransactionStore store = binning::EncodeDataset(binned);
  const auto& counts = binned.counts;
  if (counts.retained != counts.loaded - counts.dropped_target - counts.dropped_invalid ||
      counts.retained != store.size()) {
    throw InternalError("row accounting does not balance");
  }

  EnsureOutDir(config);
  const std::string binned_csv = binning::BinnedCsv(binned);
  const std::string store_json =
      io::Dump(binning::StoreToJson(store, binned.case_ids), 2, 2) + "\n";
  io::WriteText(OutPath(config, kBinnedCsv), binned_csv);
  io::WriteText(OutPath(config, kStoreJson), store_json);

  Json inputs = {{"cases", InputDigest(config.cases_path)}};
  if (!config.tsh_path.empty()) inputs["tsh"] = InputDigest(config.tsh_path);
  Json fitted = Json::object();
  for (const auto& col : binned.columns) fitted[col.feature] = col.fitted;
  Json vocabulary = Json::array();
  std::size_t n_missing = 0;
  for (std::uint32_t i = 0; i < store.vocabulary_size(); ++i) {
    const ItemMeta& m = store.meta(ItemId{i});
    if (m.is_missing) ++n_missing;
    vocabulary.push_back({{"id", i}, {"feature", m.feature}, {"bin", m.bin},
                          {"is_missing", m.is_missing}});
  }

  // A fresh binning invalidates every downstream section.
  Json manifest = Json::object();
  manifest["binning"] = {
      {"config", binning::ToJson(bc)},
      {"seed", config.seed},
      {"inputs", inputs},
      {"rows",
       {{"loaded", counts.loaded},
        {"dropped_target", counts.dropped_target},
        {"dropped_invalid", counts.dropped_invalid},
        {"retained", counts.retained}}},
      {"fitted", fitted},
      {"vocabulary", vocabulary},
      {"n_items", store.vocabulary_size()},
      {"n_missing_items", n_missing},
      {"outputs",
       {{kBinnedCsv, io::Sha256Hex(binned_csv)}, {kStoreJson, io::Sha256Hex(store_json)}}}};
  WriteManifest(config, manifest);
  RecordTiming(config, "bin", watch.Seconds(), Json::object());
}

void RunMine(const PipelineConfig& config) {
  Stopwatch watch;
  Json manifest = ReadManifest(config);
  const TransactionStore store = LoadStore(config, manifest);

  const std::uint64_t n = store.size();
  const std::uint64_t target_count = store.tidset(store.positive_target()).count();
  miner::MinerConfig mc = miner::DefaultMinerConfig(store, config.min_support.Resolve(n));
  mc.min_confidence = config.min_confidence.Resolve(target_count, n);
  mc.max_k = config.max_k;
  mc.jobs = std::max<std::size_t>(config.jobs, 1);
  mc.Validate(store);

  miner::MiningStats stats;
  miner::SupportCache cache;
  const miner::LevelTable levels = miner::MineFrequent(store, mc, &stats, &cache);
  for (std::size_t k = 0; k < levels.levels.size(); ++k) {
    for (const auto& e : levels.levels[k]) {
      if (e.antecedent.size() != k + 1 || e.joint_count < mc.min_support_count ||
          e.joint_count > e.antecedent_count) {
        throw InternalError("frequent itemset table violates its invariants");
      }
    }
  }
  const std::vector<Rule> rules = miner::GenerateRules(levels, mc, config.include_baseline);

  const std::string frequent = miner::FrequentJsonl(levels, store);
  const std::string rules_text = miner::RulesJsonl(rules, store);
  io::WriteText(OutPath(config, kFrequentJsonl), frequent);
  io::WriteText(OutPath(config, kRulesJsonl), rules_text);

  Json level_counts = Json::array();
  for (const auto& level : levels.levels) level_counts.push_back(level.size());
  Json gamma = {{"value", mc.min_confidence.value}};
  if (mc.min_confidence.exact) {
    gamma["numerator"] = mc.min_confidence.exact->first;
    gamma["denominator"] = mc.min_confidence.exact->second;
  }
  manifest.erase("analysis");
  manifest["mining"] = {
      {"params",
       {{"min_support", config.min_support.ToString()},
        {"min_support_count", mc.min_support_count},
        {"min_confidence", config.min_confidence.ToString()},
        {"gamma", gamma},
        {"max_k", config.max_k ? Json(*config.max_k) : Json(nullptr)},
        {"include_baseline", config.include_baseline}}},
      {"target", {{"id", mc.target.value}, {"count", target_count}}},
      {"n", n},
      {"level_counts", level_counts},
      {"n_frequent", levels.total()},
      {"n_rules", rules.size()},
      {"outputs",
       {{kFrequentJsonl, io::Sha256Hex(frequent)}, {kRulesJsonl, io::Sha256Hex(rules_text)}}}};
  WriteManifest(config, manifest);
  RecordTiming(config, "mine", watch.Seconds(),
               {{"candidates_per_level", stats.candidates_per_level},
                {"pruned_by_subset", stats.pruned_by_subset},
                {"cache_hits", stats.cache_hits},
                {"cache_misses", stats.cache_misses},
                {"jobs", mc.jobs}});
}

void RunAnalyze(const PipelineConfig& config) {
  Stopwatch watch;
  Json manifest = ReadManifest(config);
  const TransactionStore store = LoadStore(config, manifest);
  const std::string rules_text = ReadUpstream(config, kRulesJsonl, "mine");
  CheckFresh(manifest, "mining", kRulesJsonl, rules_text);
  const std::vector<Rule> rules = miner::ParseRulesJsonl(rules_text, store);

  analysis::AnalysisConfig ac = config.analysis;
  ac.seed = config.seed;
  ac.Validate();
  const auto metrics =
      analysis::AnalyzeIndicators(rules, store, ac, std::max<std::size_t>(config.jobs, 1));

  const std::string indicators = io::Dump(analysis::IndicatorsJson(metrics), 2, 2) + "\n";
  const std::string plotdata = io::Dump(analysis::PlotDataJson(metrics, ac), 2, 2) + "\n";
  io::WriteText(OutPath(config, kIndicatorsJson), indicators);
  io::WriteText(OutPath(config, kPlotDataJson), plotdata);

  std::map<std::string, std::size_t> tiers;
  for (const auto& m : metrics) ++tiers[analysis::TierName(m.tier)];
  manifest["analysis"] = {
      {"params",
       {{"kappa", ac.kappa},
        {"pic_threshold", ac.pic_threshold},
        {"acb_threshold", ac.acb_threshold},
        {"swarm_cap", ac.swarm_cap},
        {"seed", ac.seed}}},
      {"n_rules", rules.size()},
      {"n_indicators", metrics.size()},
      {"tiers", tiers},
      {"outputs",
       {{kIndicatorsJson, io::Sha256Hex(indicators)}, {kPlotDataJson, io::Sha256Hex(plotdata)}}}};
  WriteManifest(config, manifest);
  RecordTiming(config, "analyze", watch.Seconds(), Json::object());
}

void RunPipeline(const PipelineConfig& config) {
  const std::string timing = OutPath(config, kTimingJson);
  std::error_code ec;
  fs::remove(timing, ec);
  RunBin(config);
  RunMine(config);
  RunAnalyze(config);
}

std::string RunReport(const std::string& out_dir) {
  const std::string path = (fs::path(out_dir) / kIndicatorsJson).string();
  if (!fs::exists(path)) {
    throw InputError("missing upstream artifact " + std::string(kIndicatorsJson) +
                     " in '" + out_dir + "' (run 'analyze' first)");
  }
  return analysis::ReportTable(io::ReadJson(path));
}

}  // namespace ruleboost::cli
