#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruleboost/binning.hpp"
#include "ruleboost/core.hpp"
#include "ruleboost/csv.hpp"
#include "ruleboost/json_io.hpp"
#include "ruleboost/tsh.hpp"

namespace ruleboost::binning {

enum class ColumnType { kCategorical, kContinuous, kExcluded };
enum class ColumnRole { kFeature, kTarget, kId, kExcluded };
// Per-case features computed from the TSH series file.
enum class TshFeature { kMeanScore, kTrmssd };

struct ColumnConfig {
  std::string name;     // CSV header, or the derived column's name
  std::string feature;  // vocabulary feature name; defaults to `name`
  ColumnType type = ColumnType::kCategorical;
  ColumnRole role = ColumnRole::kFeature;
  std::optional<BinSpec> binspec;      // continuous features
  std::vector<std::string> levels;     // categorical: allowed values, in order
  std::optional<TshFeature> derived;   // value comes from the TSH series

  // Target column only.
  std::string positive = "malignant";
  std::string negative = "benign";
  std::vector<std::string> drop;       // labels filtered out (e.g. MPU)
};

struct BinningConfig {
  std::vector<std::string> na_tokens = {"", "NA", "N/A"};
  std::vector<ColumnConfig> columns;

  const ColumnConfig& target() const;
  const ColumnConfig* id() const;
};

// Parses the binning document; throws ConfigError naming the offending entry.
BinningConfig ParseBinningConfig(const io::Json& doc);
io::Json ToJson(const BinningConfig& config);

// Raw case table with N/A tokens resolved.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<std::string>>> rows;

  static RawTable FromCsv(const csv::Table& table,
                          const std::vector<std::string>& na_tokens);
  int ColumnIndex(const std::string& name) const;
};

// Long-format TSH file (case_id, timestamp, tsh) grouped by case. Timestamps
// are numeric days or ISO dates (YYYY-MM-DD, converted to days since
// 1970-01-01). Rows whose TSH cell is an N/A token are dropped.
std::map<std::string, TshSeries> LoadTshSeries(
    const csv::Table& table, const std::vector<std::string>& na_tokens);

struct RowCounts {
  std::uint64_t loaded = 0;
  std::uint64_t dropped_target = 0;   // target label in the drop list
  std::uint64_t dropped_invalid = 0;  // categorical value outside its levels
  std::uint64_t retained = 0;
};

struct BinnedColumn {
  std::string feature;
  bool is_target = false;
  BinnedValues values;
  // Target column: bin indices of the negative/positive labels.
  std::uint32_t negative_bin = 0;
  std::uint32_t positive_bin = 0;
  io::Json fitted;  // resolved bin rule, echoed into the manifest
};

struct BinnedDataset {
  std::vector<std::string> case_ids;
  std::vector<BinnedColumn> columns;
  RowCounts counts;

  std::size_t rows() const { return case_ids.size(); }
};

// Filters rows, computes derived TSH columns and bins every feature column.
// `seed` feeds the per-column k-means seeds ("kmeans:<column>").
BinnedDataset BinDataset(const RawTable& table,
                         const std::map<std::string, TshSeries>& tsh,
                         const BinningConfig& config, std::uint64_t seed);

// One item per occupied (feature, bin), ids in column order then bin order
// with the N/A bin last; one transaction per row.
TransactionStore EncodeDataset(const BinnedDataset& binned);

// Per transaction, feature -> bin label.
std::vector<std::map<std::string, std::string>> DecodeStore(
    const TransactionStore& store);

// Serialized forms used by the CLI.
std::string BinnedCsv(const BinnedDataset& binned);
io::Json StoreToJson(const TransactionStore& store,
                     const std::vector<std::string>& case_ids);
TransactionStore StoreFromJson(const io::Json& doc,
                               std::vector<std::string>* case_ids = nullptr);

}  // namespace ruleboost::binning
