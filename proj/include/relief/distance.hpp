#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relief/dataset.hpp"

namespace relief {

// Condensed upper-triangular storage of all pairwise instance distances,
// together with the number of mutually observed features per pair (needed to
// keep distances comparable when cells are missing).
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> d;             // n*(n-1)/2 entries, pair (i, j) with i < j
  std::vector<std::uint32_t> valid;  // mutually observed feature count per pair

  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }
  double at(std::size_t i, std::size_t j) const {
    return i == j ? 0.0 : d[index(i, j)];
  }
  std::uint32_t valid_at(std::size_t i, std::size_t j) const {
    return i == j ? 0 : valid[index(i, j)];
  }
};

// Per-feature value difference between two instances. Discrete features give
// 0/1 equality, continuous features |vi - vj| / (max - min), which is plain
// |vi - vj| once the dataset has been normalized. Returns NaN (the SKIP
// sentinel) when either value is missing.
double diff(std::size_t feature, std::size_t i, std::size_t j, const Dataset& data,
            const DataSummary& summary);
inline bool is_skip(double d) { return std::isnan(d); }

// Manhattan distance over all non-skipped features, rescaled by
// a / valid_count so pairs with different missingness stay comparable.
// Feature accumulation order is index-ascending; every entry is written
// exactly once, so the result is identical for any worker count.
DistanceMatrix pairwise_distances(const Dataset& data, const DataSummary& summary,
                                  int threads = 1);

struct TargetStats {
  double mean = 0.0;    // mean distance from the target to all others
  double stddev = 0.0;  // population standard deviation of those distances
};

TargetStats target_stats(const DistanceMatrix& dm, std::size_t i);

// Mean of all stored pair distances; the shared neighborhood radius used by
// the global-threshold algorithm variants.
double global_threshold(const DistanceMatrix& dm);

// Content hash of a dataset, the lookup key for the distance cache.
std::uint64_t dataset_content_hash(const Dataset& data);

// Binary cache of the condensed matrix: magic bytes, content hash, n, a,
// then the condensed payload as little-endian 64-bit floats. Only complete
// (no missing cells) datasets are cached; valid counts are then implicitly a.
bool save_distance_cache(const std::string& path, const DistanceMatrix& dm,
                         std::size_t a, std::uint64_t content_hash);
std::optional<DistanceMatrix> load_distance_cache(const std::string& path, std::size_t n,
                                                  std::size_t a, std::uint64_t content_hash);

}  // namespace relief
