#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ruleboost::binning {

// Label of the dedicated missing-value bin of every column.
inline constexpr const char* kMissingLabel = "N/A";

// A raw numeric cell; nullopt is N/A.
using Cell = std::optional<double>;

enum class LabelStyle {
  kRange,     // "1-2cm", "<1cm", "≥4cm"
  kInterval,  // "[35,45)"
};

// `n_interior` half-open bins [start + j*width, start + (j+1)*width), plus
// optional unbounded bins below `start` and at or above the last edge.
struct FixedWidth {
  double start = 0.0;
  double width = 1.0;
  int n_interior = 1;
  bool open_below = true;
  bool open_above = true;
  std::string unit;
  LabelStyle style = LabelStyle::kRange;
};

// Bin j holds boundaries[j-1] <= v < boundaries[j]; labels.size() must be
// boundaries.size() + 1.
struct Cutpoints {
  std::vector<double> boundaries;
  std::vector<std::string> labels;
};

// Lloyd 1-D k-means on the (optionally log-offset, optionally [-1,1]
// normalized) values. Bins are labelled with the raw [min,max] of members.
struct KMeans1D {
  int k = 5;
  std::optional<double> log_offset;
  bool normalize = true;
  std::uint64_t seed = 0;
};

// Equal-width grid anchored at the data minimum rounded down to a multiple
// of `anchor_multiple` (or at `anchor` when given). Resolves to a closed
// FixedWidth grid with interval labels once the data is seen.
struct SpreadGrid {
  double width = 10.0;
  double anchor_multiple = 5.0;
  std::optional<double> anchor;
};

using BinSpec = std::variant<FixedWidth, Cutpoints, KMeans1D, SpreadGrid>;

// Throws ConfigError when the spec breaks its invariants.
void Validate(const BinSpec& spec);

// Result of binning one column: ordered bin labels (N/A excluded) and a
// bin index per row, nullopt for the N/A bin.
struct BinnedValues {
  std::vector<std::string> bins;
  std::vector<std::optional<std::uint32_t>> codes;

  std::string LabelAt(std::size_t row) const;
  std::vector<std::string> Labels() const;
};

std::vector<std::string> FixedWidthLabels(const FixedWidth& spec);
// Index into FixedWidthLabels(spec). Throws InputError for non-finite values
// and values outside a closed grid.
std::uint32_t FixedWidthIndex(double v, const FixedWidth& spec);
BinnedValues BinFixedWidth(std::span<const Cell> values, const FixedWidth& spec);

std::uint32_t CutpointIndex(double v, const Cutpoints& spec);
BinnedValues BinCutpoints(std::span<const Cell> values, const Cutpoints& spec);

FixedWidth ResolveSpreadGrid(std::span<const Cell> values,
                             const SpreadGrid& spec);

// ln(x + offset) elementwise. Throws InputError when x + offset <= 0.
std::vector<double> LogOffsetTransform(std::span<const double> values,
                                       double offset = 1e-5);

// 2 (x - min) / (max - min) - 1. Throws InputError unless at least two
// distinct finite values are present.
std::vector<double> MinMaxNormalize(std::span<const double> values);

// K-means binning of the non-missing cells. The fitted boundaries (midpoints
// between adjacent cluster extremes, raw scale) are returned in `fitted` so
// the same bins can be applied to new values.
struct KMeansBinning {
  BinnedValues binned;
  Cutpoints fitted;
  std::vector<double> centroids;  // on the clustering scale, ascending
  int iterations = 0;
};
KMeansBinning BinKMeans(std::span<const Cell> values, const KMeans1D& spec);

// Formats a bin edge: up to 6 significant digits, no trailing zeros.
std::string FormatEdge(double v);

}  // namespace ruleboost::binning
