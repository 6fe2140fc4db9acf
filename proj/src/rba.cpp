// Neighbor selection and the feature-weight scoring engine.
//
// Scoring conventions, shared by every variant:
//   * near hits subtract diff, near misses add diff, each divided by
//     n times the per-feature count of observed neighbor values;
//   * miss contributions are split by endpoint class: the k-based variants
//     normalize uniformly over all selected misses, the radius variants
//     weight each class by its share of the selected misses;
//   * far instances invert the near signs (value differences score) for the
//     global-radius variant, while the dead-band variant scores value
//     agreement, via (1 - diff), with the near signs;
//   * a bank with no observed values for a feature is skipped for that
//     feature and that target.
// Neighbor lists are accumulated in ascending instance order and targets are
// merged in fixed blocks, so results are bitwise reproducible regardless of
// the worker count.

#include "relief/rba.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "relief/errors.hpp"
#include "relief/parallel.hpp"

namespace relief {

namespace {

constexpr std::size_t kTargetBlock = 64;

// Values shared across all targets of one scoring pass.
struct SelectionContext {
  std::optional<double> global_radius;
};

struct Scratch {
  std::vector<double> hit_sum;
  std::vector<std::uint32_t> hit_cnt;
  std::vector<double> miss_sum;         // classes * a, flattened
  std::vector<std::uint32_t> miss_cnt;  // classes * a, flattened
};

double feature_diff(const double* row_i, const double* row_j, std::size_t f,
                    const FeatureKind& kind) {
  const double va = row_i[f];
  const double vb = row_j[f];
  if (is_missing(va) || is_missing(vb)) return std::nan("");
  if (kind.type == FeatureType::Discrete) return va == vb ? 0.0 : 1.0;
  return std::abs(va - vb) / (kind.observed_max - kind.observed_min);
}

// One scoring bank: a hit list plus per-class miss lists.
//   hit_sign/miss_sign: +1 or -1 applied to the accumulated sums.
//   agreement: score (1 - diff) instead of diff (dead-band far scoring).
//   uniform_miss_norm: normalize misses uniformly (k-based variants) instead
//   of weighting classes by their share of the selected misses.
void apply_bank(WeightVector& acc, std::size_t target,
                const std::vector<std::uint32_t>& hits,
                const std::vector<std::vector<std::uint32_t>>& misses_by_class,
                const Dataset& data, const DataSummary& summary, double hit_sign,
                double miss_sign, bool agreement, bool uniform_miss_norm,
                Scratch& scratch) {
  const std::size_t a = data.a;
  const auto& kinds = summary.feature_kinds;
  const double* row_t = data.values.data() + target * a;
  const double dn = static_cast<double>(data.n);

  if (!hits.empty()) {
    scratch.hit_sum.assign(a, 0.0);
    scratch.hit_cnt.assign(a, 0);
    for (std::uint32_t j : hits) {
      const double* row_j = data.values.data() + j * a;
      for (std::size_t f = 0; f < a; ++f) {
        const double d = feature_diff(row_t, row_j, f, kinds[f]);
        if (std::isnan(d)) continue;
        scratch.hit_sum[f] += agreement ? 1.0 - d : d;
        ++scratch.hit_cnt[f];
      }
    }
    for (std::size_t f = 0; f < a; ++f) {
      const std::uint32_t cnt = scratch.hit_cnt[f];
      if (cnt == 0) continue;
      acc.weights[f] += hit_sign * (scratch.hit_sum[f] / (dn * static_cast<double>(cnt)));
      acc.hit_pairs[f] += cnt;
    }
  }

  const std::size_t num_classes = misses_by_class.size();
  bool any_miss = false;
  for (const auto& group : misses_by_class) {
    if (!group.empty()) {
      any_miss = true;
      break;
    }
  }
  if (!any_miss) return;

  scratch.miss_sum.assign(num_classes * a, 0.0);
  scratch.miss_cnt.assign(num_classes * a, 0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    double* sum = scratch.miss_sum.data() + c * a;
    std::uint32_t* cnt = scratch.miss_cnt.data() + c * a;
    for (std::uint32_t j : misses_by_class[c]) {
      const double* row_j = data.values.data() + j * a;
      for (std::size_t f = 0; f < a; ++f) {
        const double d = feature_diff(row_t, row_j, f, kinds[f]);
        if (std::isnan(d)) continue;
        sum[f] += agreement ? 1.0 - d : d;
        ++cnt[f];
      }
    }
  }
  for (std::size_t f = 0; f < a; ++f) {
    std::uint32_t total = 0;
    for (std::size_t c = 0; c < num_classes; ++c) total += scratch.miss_cnt[c * a + f];
    if (total == 0) continue;
    const double dtotal = static_cast<double>(total);
    double term = 0.0;
    if (uniform_miss_norm) {
      double sum = 0.0;
      for (std::size_t c = 0; c < num_classes; ++c) sum += scratch.miss_sum[c * a + f];
      term = sum / (dn * dtotal);
    } else {
      for (std::size_t c = 0; c < num_classes; ++c) {
        const std::uint32_t cnt = scratch.miss_cnt[c * a + f];
        if (cnt == 0) continue;
        const double share = static_cast<double>(cnt) / dtotal;
        term += share * scratch.miss_sum[c * a + f] / (dn * dtotal);
      }
    }
    acc.weights[f] += miss_sign * term;
    acc.miss_pairs[f] += total;
  }
}

NeighborSet select_with_context(const NeighborSpec& spec, std::size_t target,
                                const DistanceMatrix& dm,
                                const std::vector<double>& endpoint,
                                const EndpointKind& kind, const SelectionContext& ctx) {
  const std::size_t n = dm.n;
  const std::size_t num_classes = kind.discrete() ? kind.num_classes() : 1;
  NeighborSet ns;
  ns.near_misses.resize(num_classes);
  ns.far_misses.resize(num_classes);

  if (spec.k_based()) {
    const std::size_t kk = spec.resolved_k(n);
    if (kk > n - 1) {
      throw ConfigError("relieff: k=" + std::to_string(kk) +
                        " exceeds n-1=" + std::to_string(n - 1));
    }
    // Stable neighbor order: ascending distance, then ascending index.
    std::vector<std::pair<double, std::uint32_t>> order;
    order.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != target) order.emplace_back(dm.at(target, j), static_cast<std::uint32_t>(j));
    }
    std::sort(order.begin(), order.end());

    std::size_t hits_wanted = kk;
    std::vector<std::size_t> misses_wanted(num_classes, kk);
    const std::size_t target_class =
        kind.discrete() ? kind.class_index(endpoint[target]) : num_classes;
    if (kind.discrete()) misses_wanted[target_class] = 0;

    std::size_t still_wanted = hits_wanted;
    for (std::size_t c = 0; c < num_classes; ++c) still_wanted += misses_wanted[c];
    for (const auto& [d, j] : order) {
      if (still_wanted == 0) break;
      const HitOrMiss hm = hit_or_miss(endpoint[target], endpoint[j], kind);
      if (hm.hit) {
        if (hits_wanted > 0) {
          ns.near_hits.push_back(j);
          --hits_wanted;
          --still_wanted;
        }
      } else if (misses_wanted[hm.miss_class] > 0) {
        ns.near_misses[hm.miss_class].push_back(j);
        --misses_wanted[hm.miss_class];
        --still_wanted;
      }
    }
    // Too few candidates in some category: score with what exists.
    if (hits_wanted > 0) ns.shortfall = true;
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (c != target_class && misses_wanted[c] > 0) ns.shortfall = true;
    }
  } else {
    double near_below = 0.0;
    double far_above = 0.0;
    bool has_far = false;
    switch (spec.variant) {
      case Variant::Surf:
        near_below = ctx.global_radius.value();
        break;
      case Variant::SurfStar:
        near_below = ctx.global_radius.value();
        far_above = near_below;  // everything at or beyond the radius is far
        has_far = true;
        break;
      case Variant::MultiSurfStar: {
        const TargetStats st = target_stats(dm, target);
        near_below = st.mean - st.stddev / 2.0;
        far_above = st.mean + st.stddev / 2.0;
        has_far = true;
        break;
      }
      case Variant::MultiSurf: {
        const TargetStats st = target_stats(dm, target);
        near_below = st.mean - st.stddev / 2.0;
        break;
      }
      default:
        break;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == target) continue;
      const double d = dm.at(target, j);
      const bool near = d < near_below;
      bool far = false;
      if (has_far && !near) {
        far = spec.variant == Variant::SurfStar ? d >= far_above : d > far_above;
      }
      if (!near && !far) continue;
      const HitOrMiss hm = hit_or_miss(endpoint[target], endpoint[j], kind);
      auto& hits = near ? ns.near_hits : ns.far_hits;
      auto& misses = near ? ns.near_misses : ns.far_misses;
      if (hm.hit) {
        hits.push_back(static_cast<std::uint32_t>(j));
      } else {
        misses[hm.miss_class].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }

  // Canonical accumulation order inside every bank. The k-based selection
  // walks in distance order, so its lists need re-sorting by index; the
  // radius scans are already ascending.
  auto sort_ids = [](std::vector<std::uint32_t>& v) { std::sort(v.begin(), v.end()); };
  sort_ids(ns.near_hits);
  sort_ids(ns.far_hits);
  for (auto& group : ns.near_misses) sort_ids(group);
  for (auto& group : ns.far_misses) sort_ids(group);
  return ns;
}

SelectionContext make_context(const NeighborSpec& spec, const DistanceMatrix& dm) {
  SelectionContext ctx;
  if (spec.variant == Variant::Surf || spec.variant == Variant::SurfStar) {
    ctx.global_radius = global_threshold(dm);
  }
  return ctx;
}

}  // namespace

NeighborSpec NeighborSpec::relieff(int k) {
  if (k < 1) throw ConfigError("relieff: k must be at least 1");
  return {Variant::ReliefF, k, 0.0};
}

NeighborSpec NeighborSpec::relieff_percent(double percent) {
  if (!(percent > 0.0) || percent > 1.0) {
    throw ConfigError("relieff: pct must be in (0, 1]");
  }
  return {Variant::ReliefFPercent, 0, percent};
}

std::size_t NeighborSpec::resolved_k(std::size_t n) const {
  if (variant == Variant::ReliefF) return static_cast<std::size_t>(k);
  const auto derived =
      static_cast<std::size_t>(std::floor(percent * static_cast<double>(n) / 2.0));
  return std::max<std::size_t>(1, derived);
}

std::string NeighborSpec::label() const {
  switch (variant) {
    case Variant::ReliefF:
      return "relieff:k=" + std::to_string(k);
    case Variant::ReliefFPercent:
      return "relieff:pct=" + format_double(percent);
    case Variant::Surf:
      return "surf";
    case Variant::SurfStar:
      return "surfstar";
    case Variant::MultiSurfStar:
      return "multisurfstar";
    case Variant::MultiSurf:
      return "multisurf";
  }
  return "?";
}

std::size_t NeighborSet::near_miss_count() const {
  std::size_t total = 0;
  for (const auto& group : near_misses) total += group.size();
  return total;
}

HitOrMiss hit_or_miss(double yi, double yj, const EndpointKind& kind) {
  if (kind.discrete()) {
    if (yi == yj) return {true, 0};
    return {false, kind.class_index(yj)};
  }
  return {std::abs(yi - yj) < kind.sigma, 0};
}

NeighborSet select_neighbors(const NeighborSpec& spec, std::size_t target,
                             const DistanceMatrix& dm, const std::vector<double>& endpoint,
                             const EndpointKind& kind) {
  return select_with_context(spec, target, dm, endpoint, kind, make_context(spec, dm));
}

void update_weights(WeightVector& acc, std::size_t target, const NeighborSet& ns,
                    const Dataset& data, const DataSummary& summary,
                    const NeighborSpec& spec) {
  Scratch scratch;
  const bool uniform = spec.k_based();
  apply_bank(acc, target, ns.near_hits, ns.near_misses, data, summary,
             /*hit_sign=*/-1.0, /*miss_sign=*/+1.0, /*agreement=*/false, uniform, scratch);
  if (spec.variant == Variant::SurfStar) {
    apply_bank(acc, target, ns.far_hits, ns.far_misses, data, summary,
               /*hit_sign=*/+1.0, /*miss_sign=*/-1.0, /*agreement=*/false, uniform, scratch);
  } else if (spec.variant == Variant::MultiSurfStar) {
    apply_bank(acc, target, ns.far_hits, ns.far_misses, data, summary,
               /*hit_sign=*/-1.0, /*miss_sign=*/+1.0, /*agreement=*/true, uniform, scratch);
  }
}

WeightVector score(const Dataset& data, const DataSummary& summary, const NeighborSpec& spec,
                   const DistanceMatrix& dm, int threads) {
  if (data.n < 2) throw DataError("score: need at least two instances");
  if (spec.k_based() && spec.resolved_k(data.n) > data.n - 1) {
    throw ConfigError("relieff: k=" + std::to_string(spec.resolved_k(data.n)) +
                      " exceeds n-1=" + std::to_string(data.n - 1));
  }
  const std::size_t n = data.n;
  const std::size_t a = data.a;
  const std::size_t num_blocks = (n + kTargetBlock - 1) / kTargetBlock;
  const SelectionContext ctx = make_context(spec, dm);

  std::vector<WeightVector> block_acc(num_blocks);

  parallel_blocks(n, kTargetBlock, threads,
                  [&](std::size_t block, std::size_t lo, std::size_t hi) {
    WeightVector& acc = block_acc[block];
    acc.weights.assign(a, 0.0);
    acc.hit_pairs.assign(a, 0);
    acc.miss_pairs.assign(a, 0);
    Scratch scratch;
    const bool uniform = spec.k_based();
    for (std::size_t t = lo; t < hi; ++t) {
      const NeighborSet ns =
          select_with_context(spec, t, dm, data.endpoint, summary.endpoint_kind, ctx);
      if (ns.shortfall) ++acc.shortfall_targets;
      apply_bank(acc, t, ns.near_hits, ns.near_misses, data, summary, -1.0, +1.0,
                 /*agreement=*/false, uniform, scratch);
      if (spec.variant == Variant::SurfStar) {
        apply_bank(acc, t, ns.far_hits, ns.far_misses, data, summary, +1.0, -1.0,
                   /*agreement=*/false, uniform, scratch);
      } else if (spec.variant == Variant::MultiSurfStar) {
        apply_bank(acc, t, ns.far_hits, ns.far_misses, data, summary, -1.0, +1.0,
                   /*agreement=*/true, uniform, scratch);
      }
    }
  });

  WeightVector out;
  out.weights.assign(a, 0.0);
  out.hit_pairs.assign(a, 0);
  out.miss_pairs.assign(a, 0);
  for (const WeightVector& acc : block_acc) {
    for (std::size_t f = 0; f < a; ++f) {
      out.weights[f] += acc.weights[f];
      out.hit_pairs[f] += acc.hit_pairs[f];
      out.miss_pairs[f] += acc.miss_pairs[f];
    }
    out.shortfall_targets += acc.shortfall_targets;
  }
  for (double& w : out.weights) w = std::clamp(w, -1.0, 1.0);
  return out;
}

WeightVector score(const Dataset& data, const DataSummary& summary, const NeighborSpec& spec,
                   int threads) {
  const DistanceMatrix dm = pairwise_distances(data, summary, threads);
  return score(data, summary, spec, dm, threads);
}

}  // namespace relief
