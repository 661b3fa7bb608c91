#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "ruleboost/analysis.hpp"
#include "ruleboost/dataset.hpp"
#include "ruleboost/json_io.hpp"
#include "ruleboost/miner.hpp"

namespace ruleboost::cli {

inline constexpr const char* kToolName = "ruleboost";
inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr const char* kBinnedCsv = "binned.csv";
inline constexpr const char* kStoreJson = "store.json";
inline constexpr const char* kFrequentJsonl = "frequent.jsonl";
inline constexpr const char* kRulesJsonl = "rules.jsonl";
inline constexpr const char* kIndicatorsJson = "indicators.json";
inline constexpr const char* kPlotDataJson = "plotdata.json";
inline constexpr const char* kManifestJson = "manifest.json";
// Wall-clock stage timings; kept out of the manifest so reruns stay
// byte-identical.
inline constexpr const char* kTimingJson = "timing.json";

// Minimum support as an absolute count, an exact fraction "a/b" or a decimal
// fraction of n. Fractions resolve to ceil(fraction * n).
class MinSupport {
 public:
  static MinSupport Count(std::uint64_t count);
  // Integers are counts; "a/b" and decimals are fractions.
  static MinSupport Parse(const std::string& text);
  static MinSupport FromJson(const io::Json& j);

  std::uint64_t Resolve(std::uint64_t n) const;
  std::string ToString() const;

 private:
  struct Ratio {
    std::uint64_t num;
    std::uint64_t den;
  };
  std::variant<std::uint64_t, Ratio, double> value_ = std::uint64_t{10};
};

// "beta-squared" (default) or an explicit floor in [0,1].
class ConfidenceSetting {
 public:
  static ConfidenceSetting BetaSquared() { return {}; }
  static ConfidenceSetting Parse(const std::string& text);
  static ConfidenceSetting FromJson(const io::Json& j);

  miner::ConfidenceFloor Resolve(std::uint64_t target_count, std::uint64_t n) const;
  std::string ToString() const;

 private:
  std::optional<double> value_;
};

struct PipelineConfig {
  std::string cases_path;
  std::string tsh_path;  // optional
  std::optional<binning::BinningConfig> binning;
  MinSupport min_support = MinSupport::Count(10);
  ConfidenceSetting min_confidence;
  std::optional<std::size_t> max_k;
  bool include_baseline = true;
  analysis::AnalysisConfig analysis;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out_dir = "out";

  // Reads a pipeline document; relative input paths resolve against
  // `base_dir`. Sections: inputs, binning, miner, analysis, seed.
  static PipelineConfig FromJson(const io::Json& doc, const std::string& base_dir);
};

// Stage entry points; each reads its upstream artifacts from out_dir and
// records its section of manifest.json there.
void RunBin(const PipelineConfig& config);
void RunMine(const PipelineConfig& config);
void RunAnalyze(const PipelineConfig& config);
// bin → mine → analyze.
void RunPipeline(const PipelineConfig& config);
// Table of indicators.json in out_dir.
std::string RunReport(const std::string& out_dir);

}  // namespace ruleboost::cli
