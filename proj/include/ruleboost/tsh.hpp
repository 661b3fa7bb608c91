#pragma once

#include <optional>
#include <vector>

namespace ruleboost::binning {

struct TshPoint {
  double day = 0.0;  // days, any fixed origin
  double value = 0.0;
};

// Time-ordered logTSH series of one case.
class TshSeries {
 public:
  // Raw TSH readings (> 0); the series stores their natural log. Points are
  // sorted by time; a repeated timestamp throws InputError.
  static TshSeries FromTsh(std::vector<TshPoint> points);
  // Points already on the log scale.
  static TshSeries FromLog(std::vector<TshPoint> points);

  const std::vector<TshPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<TshPoint> points_;
};

// Time-weighted mean of the trapezoid averages of adjacent logTSH values; the
// only value for a single-record series. Throws InputError on an empty series.
double MeanTshScore(const TshSeries& series);

// sqrt(mean of squared per-interval slopes); nullopt for a single record.
std::optional<double> TshTrmssd(const TshSeries& series);

}  // namespace ruleboost::binning
