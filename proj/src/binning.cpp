#include "ruleboost/binning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "ruleboost/error.hpp"
#include "ruleboost/kmeans.hpp"

namespace ruleboost::binning {

namespace {

std::string FormatWithPrecision(double v, int precision) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void CheckFinite(double v) {
  if (!std::isfinite(v)) {
    throw InputError("non-finite value " + FormatWithPrecision(v, 6) +
                     " cannot be binned");
  }
}

struct SpecValidator {
  void operator()(const FixedWidth& s) const {
    if (!std::isfinite(s.start) || !(s.width > 0.0) ||
        !std::isfinite(s.width)) {
      throw ConfigError("fixed-width bins need a finite start and width > 0");
    }
    if (s.n_interior < 1) {
      throw ConfigError("fixed-width bins need n_interior >= 1");
    }
  }
  void operator()(const Cutpoints& s) const {
    for (std::size_t i = 0; i < s.boundaries.size(); ++i) {
      if (!std::isfinite(s.boundaries[i])) {
        throw ConfigError("cutpoint boundaries must be finite");
      }
      if (i > 0 && !(s.boundaries[i - 1] < s.boundaries[i])) {
        throw ConfigError("cutpoint boundaries must be strictly ascending");
      }
    }
    if (s.labels.size() != s.boundaries.size() + 1) {
      throw ConfigError("cutpoints need exactly one more label than boundaries");
    }
    if (std::set<std::string>(s.labels.begin(), s.labels.end()).size() !=
        s.labels.size()) {
      throw ConfigError("cutpoint labels must be unique");
    }
  }
  void operator()(const KMeans1D& s) const {
    if (s.k < 1) throw ConfigError("k-means binning needs k >= 1");
    if (s.log_offset && !(std::isfinite(*s.log_offset))) {
      throw ConfigError("k-means log offset must be finite");
    }
  }
  void operator()(const SpreadGrid& s) const {
    if (!(s.width > 0.0) || !(s.anchor_multiple > 0.0)) {
      throw ConfigError("spread grid needs width > 0 and anchor_multiple > 0");
    }
  }
};

}  // namespace

void Validate(const BinSpec& spec) { std::visit(SpecValidator{}, spec); }

std::string FormatEdge(double v) { return FormatWithPrecision(v, 6); }

std::string BinnedValues::LabelAt(std::size_t row) const {
  const auto& code = codes.at(row);
  return code ? bins.at(*code) : std::string(kMissingLabel);
}

std::vector<std::string> BinnedValues::Labels() const {
  std::vector<std::string> out;
  out.reserve(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) out.push_back(LabelAt(i));
  return out;
}

std::vector<std::string> FixedWidthLabels(const FixedWidth& spec) {
  std::vector<std::string> labels;
  const double end = spec.start + spec.n_interior * spec.width;
  if (spec.open_below) labels.push_back("<" + FormatEdge(spec.start) + spec.unit);
  for (int j = 0; j < spec.n_interior; ++j) {
    const std::string lo = FormatEdge(spec.start + j * spec.width);
    const std::string hi = FormatEdge(spec.start + (j + 1) * spec.width);
    if (spec.style == LabelStyle::kInterval) {
      labels.push_back("[" + lo + "," + hi + ")" + spec.unit);
    } else {
      labels.push_back(lo + "-" + hi + spec.unit);
    }
  }
  if (spec.open_above) labels.push_back("≥" + FormatEdge(end) + spec.unit);
  return labels;
}

std::uint32_t FixedWidthIndex(double v, const FixedWidth& spec) {
  CheckFinite(v);
  const std::uint32_t offset = spec.open_below ? 1 : 0;
  if (v < spec.start) {
    if (spec.open_below) return 0;
    throw InputError("value " + FormatEdge(v) + " below the grid start " +
                     FormatEdge(spec.start));
  }
  auto edge = [&](long j) { return spec.start + static_cast<double>(j) * spec.width; };
  long j = static_cast<long>(std::floor((v - spec.start) / spec.width));
  // Guard the floor against rounding at exact edges.
  while (j > 0 && v < edge(j)) --j;
  while (v >= edge(j + 1) && j < spec.n_interior) ++j;
  if (j >= spec.n_interior) {
    if (spec.open_above) return offset + static_cast<std::uint32_t>(spec.n_interior);
    throw InputError("value " + FormatEdge(v) + " above the grid end " +
                     FormatEdge(edge(spec.n_interior)));
  }
  return offset + static_cast<std::uint32_t>(j);
}

BinnedValues BinFixedWidth(std::span<const Cell> values, const FixedWidth& spec) {
  Validate(spec);
  BinnedValues out;
  out.bins = FixedWidthLabels(spec);
  out.codes.reserve(values.size());
  for (const Cell& c : values) {
    out.codes.push_back(c ? std::optional(FixedWidthIndex(*c, spec)) : std::nullopt);
  }
  return out;
}

std::uint32_t CutpointIndex(double v, const Cutpoints& spec) {
  CheckFinite(v);
  auto it = std::upper_bound(spec.boundaries.begin(), spec.boundaries.end(), v);
  return static_cast<std::uint32_t>(it - spec.boundaries.begin());
}

BinnedValues BinCutpoints(std::span<const Cell> values, const Cutpoints& spec) {
  Validate(spec);
  BinnedValues out;
  out.bins = spec.labels;
  out.codes.reserve(values.size());
  for (const Cell& c : values) {
    out.codes.push_back(c ? std::optional(CutpointIndex(*c, spec)) : std::nullopt);
  }
  return out;
}

FixedWidth ResolveSpreadGrid(std::span<const Cell> values,
                             const SpreadGrid& spec) {
  Validate(spec);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const Cell& c : values) {
    if (!c) continue;
    CheckFinite(*c);
    lo = std::min(lo, *c);
    hi = std::max(hi, *c);
  }
  FixedWidth grid;
  grid.width = spec.width;
  grid.open_below = false;
  grid.open_above = false;
  grid.style = LabelStyle::kInterval;
  if (spec.anchor) {
    grid.start = *spec.anchor;
  } else if (std::isfinite(lo)) {
    grid.start = std::floor(lo / spec.anchor_multiple) * spec.anchor_multiple;
  } else {
    grid.start = 0.0;
  }
  if (std::isfinite(hi) && hi >= grid.start) {
    grid.n_interior =
        static_cast<int>(std::floor((hi - grid.start) / spec.width)) + 1;
  } else {
    grid.n_interior = 1;
  }
  return grid;
}

std::vector<double> LogOffsetTransform(std::span<const double> values,
                                       double offset) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) {
    if (!(x + offset > 0.0) || !std::isfinite(x)) {
      throw InputError("log-offset transform undefined for " + FormatEdge(x));
    }
    out.push_back(std::log(x + offset));
  }
  return out;
}

std::vector<double> MinMaxNormalize(std::span<const double> values) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double x : values) {
    CheckFinite(x);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(hi > lo)) {
    throw InputError("min-max normalization needs two distinct values");
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) {
    if (x == lo) {
      out.push_back(-1.0);
    } else if (x == hi) {
      out.push_back(1.0);
    } else {
      out.push_back(2.0 * (x - lo) / (hi - lo) - 1.0);
    }
  }
  return out;
}

KMeansBinning BinKMeans(std::span<const Cell> values, const KMeans1D& spec) {
  Validate(spec);
  std::vector<std::size_t> present;
  std::vector<double> raw;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      CheckFinite(*values[i]);
      present.push_back(i);
      raw.push_back(*values[i]);
    }
  }

  KMeansBinning out;
  out.binned.codes.assign(values.size(), std::nullopt);
  if (raw.empty()) return out;

  std::vector<double> scaled = raw;
  if (spec.log_offset) scaled = LogOffsetTransform(scaled, *spec.log_offset);
  if (spec.normalize) scaled = MinMaxNormalize(scaled);

  KMeansOptions options;
  options.k = spec.k;
  options.seed = spec.seed;
  const KMeansResult fit = FitKMeans1D(scaled, options);
  out.centroids = fit.centroids;
  out.iterations = fit.iterations;

  const auto k = static_cast<std::size_t>(spec.k);
  std::vector<double> lo(k, INFINITY);
  std::vector<double> hi(k, -INFINITY);
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const auto c = static_cast<std::size_t>(fit.labels[j]);
    lo[c] = std::min(lo[c], raw[j]);
    hi[c] = std::max(hi[c], raw[j]);
    out.binned.codes[present[j]] = static_cast<std::uint32_t>(c);
  }

  // Widen the printed precision until every label is distinct.
  for (int precision = 6; precision <= 17; ++precision) {
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < k; ++c) {
      labels.push_back("[" + FormatWithPrecision(lo[c], precision) + "," +
                       FormatWithPrecision(hi[c], precision) + "]");
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() == k ||
        precision == 17) {
      out.binned.bins = labels;
      break;
    }
  }
  out.fitted.labels = out.binned.bins;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    out.fitted.boundaries.push_back(0.5 * (hi[c] + lo[c + 1]));
  }
  return out;
}

}  // namespace ruleboost::binning
