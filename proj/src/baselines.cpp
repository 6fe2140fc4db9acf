// Myopic baseline filters: chi-square, one-way ANOVA F, and plug-in mutual
// information. Each scores features independently of one another.

#include "relief/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relief/errors.hpp"

namespace relief {

namespace {

void require_discrete_endpoint(const DataSummary& summary, const char* who) {
  if (!summary.endpoint_kind.discrete()) {
    throw UnsupportedError(std::string(who) + " is not applicable to a continuous endpoint");
  }
}

// Maps each observed cell of a feature onto a level index. Discrete features
// use their distinct values, continuous ones equal-width bins over the
// observed range. Returns the number of levels.
std::size_t feature_levels(const Dataset& data, const DataSummary& summary, std::size_t f,
                           int bins, std::vector<int>& level_of_row) {
  level_of_row.assign(data.n, -1);
  const FeatureKind& kind = summary.feature_kinds[f];
  if (kind.type == FeatureType::Discrete) {
    std::vector<double> values;
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, f);
      if (!is_missing(v)) values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, f);
      if (is_missing(v)) continue;
      const auto it = std::lower_bound(values.begin(), values.end(), v);
      level_of_row[i] = static_cast<int>(it - values.begin());
    }
    return values.size();
  }
  const double lo = kind.observed_min;
  const double width = kind.observed_max - kind.observed_min;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double v = data.cell(i, f);
    if (is_missing(v)) continue;
    int b = static_cast<int>((v - lo) / width * bins);
    b = std::clamp(b, 0, bins - 1);
    level_of_row[i] = b;
  }
  return static_cast<std::size_t>(bins);
}

std::vector<std::size_t> class_of_row(const Dataset& data, const EndpointKind& kind) {
  std::vector<std::size_t> out(data.n);
  for (std::size_t i = 0; i < data.n; ++i) out[i] = kind.class_index(data.endpoint[i]);
  return out;
}

}  // namespace

WeightVector chi_square_scores(const Dataset& data, const DataSummary& summary) {
  require_discrete_endpoint(summary, "chi-square");
  const std::size_t num_classes = summary.endpoint_kind.num_classes();
  const std::vector<std::size_t> cls = class_of_row(data, summary.endpoint_kind);

  WeightVector out;
  out.weights.assign(data.a, 0.0);
  out.hit_pairs.assign(data.a, 0);
  out.miss_pairs.assign(data.a, 0);

  std::vector<int> level;
  for (std::size_t f = 0; f < data.a; ++f) {
    const std::size_t levels = feature_levels(data, summary, f, kDefaultBins, level);
    std::vector<double> counts(levels * num_classes, 0.0);
    std::vector<double> row_tot(levels, 0.0);
    std::vector<double> col_tot(num_classes, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
      if (level[i] < 0) continue;
      counts[static_cast<std::size_t>(level[i]) * num_classes + cls[i]] += 1.0;
      row_tot[static_cast<std::size_t>(level[i])] += 1.0;
      col_tot[cls[i]] += 1.0;
      total += 1.0;
    }
    double chi2 = 0.0;
    if (total > 0.0) {
      for (std::size_t r = 0; r < levels; ++r) {
        if (row_tot[r] == 0.0) continue;
        for (std::size_t c = 0; c < num_classes; ++c) {
          if (col_tot[c] == 0.0) continue;
          const double expected = row_tot[r] * col_tot[c] / total;
          const double delta = counts[r * num_classes + c] - expected;
          chi2 += delta * delta / expected;
        }
      }
    }
    out.weights[f] = chi2;
  }
  return out;
}

WeightVector anova_f_scores(const Dataset& data, const DataSummary& summary) {
  require_discrete_endpoint(summary, "anova-f");
  const std::size_t num_classes = summary.endpoint_kind.num_classes();
  const std::vector<std::size_t> cls = class_of_row(data, summary.endpoint_kind);

  WeightVector out;
  out.weights.assign(data.a, 0.0);
  out.hit_pairs.assign(data.a, 0);
  out.miss_pairs.assign(data.a, 0);

  for (std::size_t f = 0; f < data.a; ++f) {
    std::vector<double> group_sum(num_classes, 0.0);
    std::vector<double> group_cnt(num_classes, 0.0);
    double grand_sum = 0.0;
    double grand_cnt = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, f);
      if (is_missing(v)) continue;
      group_sum[cls[i]] += v;
      group_cnt[cls[i]] += 1.0;
      grand_sum += v;
      grand_cnt += 1.0;
    }
    std::size_t groups = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (group_cnt[c] > 0.0) ++groups;
    }
    if (groups < 2 || grand_cnt <= static_cast<double>(groups)) {
      out.weights[f] = 0.0;
      continue;
    }
    const double grand_mean = grand_sum / grand_cnt;
    double ss_between = 0.0;
    double ss_within = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (group_cnt[c] == 0.0) continue;
      const double mean_c = group_sum[c] / group_cnt[c];
      ss_between += group_cnt[c] * (mean_c - grand_mean) * (mean_c - grand_mean);
    }
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, f);
      if (is_missing(v)) continue;
      const double mean_c = group_sum[cls[i]] / group_cnt[cls[i]];
      ss_within += (v - mean_c) * (v - mean_c);
    }
    if (ss_between <= 0.0) {
      out.weights[f] = 0.0;
    } else if (ss_within == 0.0) {
      out.weights[f] = std::numeric_limits<double>::infinity();
    } else {
      const double ms_between = ss_between / static_cast<double>(groups - 1);
      const double ms_within = ss_within / (grand_cnt - static_cast<double>(groups));
      out.weights[f] = ms_between / ms_within;
    }
  }
  return out;
}

WeightVector mutual_info_scores(const Dataset& data, const DataSummary& summary, int bins) {
  require_discrete_endpoint(summary, "mutual-info");
  if (bins < 1) throw ConfigError("mutual-info: bins must be at least 1");
  const std::size_t num_classes = summary.endpoint_kind.num_classes();
  const std::vector<std::size_t> cls = class_of_row(data, summary.endpoint_kind);

  WeightVector out;
  out.weights.assign(data.a, 0.0);
  out.hit_pairs.assign(data.a, 0);
  out.miss_pairs.assign(data.a, 0);

  std::vector<int> level;
  for (std::size_t f = 0; f < data.a; ++f) {
    const std::size_t levels = feature_levels(data, summary, f, bins, level);
    std::vector<double> joint(levels * num_classes, 0.0);
    std::vector<double> px(levels, 0.0);
    std::vector<double> py(num_classes, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
      if (level[i] < 0) continue;
      joint[static_cast<std::size_t>(level[i]) * num_classes + cls[i]] += 1.0;
      total += 1.0;
    }
    if (total == 0.0) continue;
    for (std::size_t r = 0; r < levels; ++r) {
      for (std::size_t c = 0; c < num_classes; ++c) {
        const double p = joint[r * num_classes + c] / total;
        joint[r * num_classes + c] = p;
        px[r] += p;
        py[c] += p;
      }
    }
    double mi = 0.0;
    for (std::size_t r = 0; r < levels; ++r) {
      for (std::size_t c = 0; c < num_classes; ++c) {
        const double p = joint[r * num_classes + c];
        if (p > 0.0) mi += p * std::log(p / (px[r] * py[c]));
      }
    }
    out.weights[f] = mi;
  }
  return out;
}

}  // namespace relief
