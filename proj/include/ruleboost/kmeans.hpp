#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ruleboost::binning {

struct KMeansOptions {
  int k = 5;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int max_iterations = 300;
  // Independent k-means++ restarts; the lowest inertia wins.
  int n_init = 10;
};

struct KMeansResult {
  // Cluster per input value; clusters are numbered by ascending centroid.
  std::vector<int> labels;
  std::vector<double> centroids;
  // [min, max] of the members of each cluster.
  std::vector<std::pair<double, double>> intervals;
  double inertia = 0.0;
  int iterations = 0;
};

// Lloyd's algorithm on the real line with k-means++ seeding. Deterministic for
// a given seed. Throws InputError when fewer than k distinct values exist or
// any value is non-finite.
KMeansResult FitKMeans1D(std::span<const double> values,
                      const KMeansOptions& options);

}  // namespace ruleboost::binning
