#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relief/dataset.hpp"
#include "relief/distance.hpp"

namespace relief {

enum class Variant {
  ReliefF,         // k nearest hits, k nearest misses per other class
  ReliefFPercent,  // k derived from a fraction of n
  Surf,            // neighbors inside the global mean-distance radius
  SurfStar,        // Surf neighbors plus inverted scoring of everything outside
  MultiSurfStar,   // per-target radius with a dead band, near and far scoring
  MultiSurf,       // per-target radius with a dead band, near scoring only
};

struct NeighborSpec {
  Variant variant = Variant::MultiSurf;
  int k = 10;            // ReliefF only
  double percent = 0.1;  // ReliefFPercent only, in (0, 1]

  static NeighborSpec relieff(int k);
  static NeighborSpec relieff_percent(double percent);
  static NeighborSpec surf() { return {Variant::Surf, 0, 0.0}; }
  static NeighborSpec surf_star() { return {Variant::SurfStar, 0, 0.0}; }
  static NeighborSpec multisurf_star() { return {Variant::MultiSurfStar, 0, 0.0}; }
  static NeighborSpec multisurf() { return {Variant::MultiSurf, 0, 0.0}; }

  bool k_based() const {
    return variant == Variant::ReliefF || variant == Variant::ReliefFPercent;
  }
  bool has_far() const {
    return variant == Variant::SurfStar || variant == Variant::MultiSurfStar;
  }
  // Neighbors per side for the k-based variants; the percent form uses half
  // of the requested instance share as hits and half as misses.
  std::size_t resolved_k(std::size_t n) const;
  std::string label() const;
};

// Neighbor selection result for one target instance. Misses are kept grouped
// by endpoint class (one group for continuous endpoints) because the scoring
// update weights each class by its share of the selected misses.
struct NeighborSet {
  std::vector<std::uint32_t> near_hits;
  std::vector<std::vector<std::uint32_t>> near_misses;  // by class index
  std::vector<std::uint32_t> far_hits;
  std::vector<std::vector<std::uint32_t>> far_misses;
  bool shortfall = false;  // some category had fewer candidates than requested

  std::size_t near_hit_count() const { return near_hits.size(); }
  std::size_t near_miss_count() const;
};

// Endpoint agreement between two instances. Discrete endpoints compare
// labels; continuous endpoints call a pair a hit when the endpoint gap stays
// under the population standard deviation.
struct HitOrMiss {
  bool hit = false;
  std::size_t miss_class = 0;  // class index of j when not a hit (0 if continuous)
};
HitOrMiss hit_or_miss(double yi, double yj, const EndpointKind& kind);

NeighborSet select_neighbors(const NeighborSpec& spec, std::size_t target,
                             const DistanceMatrix& dm, const std::vector<double>& endpoint,
                             const EndpointKind& kind);

// Accumulated per-feature relevance scores plus missing-data accounting: the
// number of valid (non-skipped) hit and miss scoring events per feature.
struct WeightVector {
  std::vector<double> weights;
  std::vector<std::uint64_t> hit_pairs;
  std::vector<std::uint64_t> miss_pairs;
  std::uint64_t shortfall_targets = 0;
};

// Adds one target's contribution to the accumulator. Each scoring bank is
// normalized per feature by the count of neighbors whose value was actually
// observed, so skipped cells neither contribute nor dilute.
void update_weights(WeightVector& acc, std::size_t target, const NeighborSet& ns,
                    const Dataset& data, const DataSummary& summary,
                    const NeighborSpec& spec);

// Full scoring pass: every instance acts as the target exactly once.
// Requires a prepared (normalized) dataset. Deterministic for any thread
// count: targets are accumulated in fixed blocks merged in index order.
// Finalization clips each weight into [-1, 1].
WeightVector score(const Dataset& data, const DataSummary& summary, const NeighborSpec& spec,
                   const DistanceMatrix& dm, int threads = 1);
WeightVector score(const Dataset& data, const DataSummary& summary, const NeighborSpec& spec,
                   int threads = 1);

}  // namespace relief
