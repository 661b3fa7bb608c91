#include "ruleboost/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "ruleboost/error.hpp"
#include "ruleboost/seed.hpp"

namespace ruleboost::binning {

namespace {

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// k-means++ seeding: first centre uniform, the rest with probability
// proportional to squared distance from the nearest chosen centre.
std::vector<double> SeedCentres(std::span<const double> x, int k,
                                std::mt19937_64& rng) {
  const std::size_t n = x.size();
  std::vector<double> centres;
  centres.push_back(x[rng() % n]);
  std::vector<double> d2(n);
  while (static_cast<int>(centres.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = INFINITY;
      for (double c : centres) best = std::min(best, (x[i] - c) * (x[i] - c));
      d2[i] = best;
      total += best;
    }
    const double target = Uniform01(rng) * total;
    double acc = 0.0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] == 0.0) continue;
      acc += d2[i];
      pick = i;
      if (acc > target) break;
    }
    centres.push_back(x[pick]);
  }
  std::sort(centres.begin(), centres.end());
  return centres;
}

struct Fit {
  std::vector<int> labels;
  std::vector<double> centroids;
  double inertia = 0.0;
  int iterations = 0;
};

// Nearest centroid; centroids are ascending so ties go to the lower one.
int Nearest(double v, const std::vector<double>& centroids) {
  int best = 0;
  double best_d = std::abs(v - centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = std::abs(v - centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

Fit Lloyd(std::span<const double> x, std::vector<double> centroids,
          const KMeansOptions& opt) {
  const std::size_t n = x.size();
  const auto k = static_cast<std::size_t>(opt.k);
  Fit fit;
  fit.labels.assign(n, -1);
  std::vector<int> prev;
  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    fit.iterations = iter;
    prev = fit.labels;
    for (std::size_t i = 0; i < n; ++i) fit.labels[i] = Nearest(x[i], centroids);

    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> cnt(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(fit.labels[i])] += x[i];
      ++cnt[static_cast<std::size_t>(fit.labels[i])];
    }
    bool repaired = false;
    double shift = 0.0;
    std::vector<double> next(k);
    for (std::size_t c = 0; c < k; ++c) {
      next[c] = cnt[c] > 0 ? sum[c] / static_cast<double>(cnt[c]) : centroids[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (cnt[c] > 0) continue;
      // Empty cluster: move it onto the point farthest from its centroid.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(x[i] - next[static_cast<std::size_t>(fit.labels[i])]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      next[c] = x[far];
      repaired = true;
    }
    for (std::size_t c = 0; c < k; ++c) {
      shift = std::max(shift, std::abs(next[c] - centroids[c]));
    }
    centroids = next;
    std::sort(centroids.begin(), centroids.end());
    if (!repaired && (fit.labels == prev || shift < opt.tolerance)) break;
  }
  // Final assignment so labels are exactly the nearest-centroid partition.
  for (std::size_t i = 0; i < n; ++i) fit.labels[i] = Nearest(x[i], centroids);
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> cnt(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[static_cast<std::size_t>(fit.labels[i])] += x[i];
    ++cnt[static_cast<std::size_t>(fit.labels[i])];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (cnt[c] > 0) centroids[c] = sum[c] / static_cast<double>(cnt[c]);
  }
  fit.centroids = centroids;
  fit.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - centroids[static_cast<std::size_t>(fit.labels[i])];
    fit.inertia += d * d;
  }
  return fit;
}

}  // namespace

KMeansResult FitKMeans1D(std::span<const double> values,
                      const KMeansOptions& options) {
  if (options.k < 1) throw InputError("k-means needs k >= 1");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("k-means input must be finite");
  }
  const std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() < static_cast<std::size_t>(options.k)) {
    throw InputError("k-means with k=" + std::to_string(options.k) +
                     " needs at least k distinct values, found " +
                     std::to_string(distinct.size()));
  }

  Fit best;
  bool have_best = false;
  for (int init = 0; init < std::max(1, options.n_init); ++init) {
    std::mt19937_64 rng(
        DeriveSeed(options.seed, "kmeans-init-" + std::to_string(init)));
    Fit fit = Lloyd(values, SeedCentres(values, options.k, rng), options);
    if (!have_best || fit.inertia < best.inertia) {
      best = std::move(fit);
      have_best = true;
    }
  }

  // Renumber clusters by ascending centroid.
  const auto k = static_cast<std::size_t>(options.k);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return best.centroids[a] < best.centroids[b];
  });
  std::vector<int> rank(k);
  for (std::size_t r = 0; r < k; ++r) rank[order[r]] = static_cast<int>(r);

  KMeansResult out;
  out.inertia = best.inertia;
  out.iterations = best.iterations;
  out.labels.reserve(values.size());
  out.centroids.resize(k);
  out.intervals.assign(k, {INFINITY, -INFINITY});
  for (std::size_t c = 0; c < k; ++c) out.centroids[static_cast<std::size_t>(rank[c])] = best.centroids[c];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int c = rank[static_cast<std::size_t>(best.labels[i])];
    out.labels.push_back(c);
    auto& [lo, hi] = out.intervals[static_cast<std::size_t>(c)];
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
  }
  return out;
}

}  // namespace ruleboost::binning
