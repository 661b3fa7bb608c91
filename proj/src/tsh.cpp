#include "ruleboost/tsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ruleboost/error.hpp"

namespace ruleboost::binning {

namespace {

void SortAndCheck(std::vector<TshPoint>& points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const TshPoint& a, const TshPoint& b) { return a.day < b.day; });
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].day) || !std::isfinite(points[i].value)) {
      throw InputError("TSH series holds a non-finite value");
    }
    if (i > 0 && points[i].day == points[i - 1].day) {
      throw InputError("TSH series has two records at day " +
                       std::to_string(points[i].day) +
                       " (zero-length interval)");
    }
  }
}

}  // namespace

TshSeries TshSeries::FromTsh(std::vector<TshPoint> points) {
  for (TshPoint& p : points) {
    if (!(p.value > 0.0)) {
      throw InputError("TSH readings must be positive, got " +
                       std::to_string(p.value));
    }
    p.value = std::log(p.value);
  }
  return FromLog(std::move(points));
}

TshSeries TshSeries::FromLog(std::vector<TshPoint> points) {
  SortAndCheck(points);
  TshSeries s;
  s.points_ = std::move(points);
  return s;
}

double MeanTshScore(const TshSeries& series) {
  const auto& p = series.points();
  if (p.empty()) throw InputError("mean TSH score of an empty series");
  if (p.size() == 1) return p[0].value;
  double weighted = 0.0;
  double span = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double dt = p[i + 1].day - p[i].day;
    weighted += 0.5 * (p[i].value + p[i + 1].value) * dt;
    span += dt;
  }
  return weighted / span;
}

std::optional<double> TshTrmssd(const TshSeries& series) {
  const auto& p = series.points();
  if (p.empty()) throw InputError("TSH tRMSSD of an empty series");
  if (p.size() == 1) return std::nullopt;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double slope = (p[i + 1].value - p[i].value) / (p[i + 1].day - p[i].day);
    sum_sq += slope * slope;
  }
  return std::sqrt(sum_sq / static_cast<double>(p.size() - 1));
}

}  // namespace ruleboost::binning
