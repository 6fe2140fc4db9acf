#pragma once

#include "relief/dataset.hpp"
#include "relief/rba.hpp"

namespace relief {

inline constexpr int kDefaultBins = 10;

// Myopic per-feature filters used as the comparison group. All three require
// a discrete endpoint and throw UnsupportedError otherwise. Continuous
// features are discretized into equal-width bins where a contingency table
// is needed. Missing cells are simply left out of the counts.

// Pearson chi-square statistic of each feature against the class.
WeightVector chi_square_scores(const Dataset& data, const DataSummary& summary);

// One-way ANOVA F statistic (between-group over within-group mean squares).
// Zero within-group variance with distinct group means yields +infinity,
// which ranks first.
WeightVector anova_f_scores(const Dataset& data, const DataSummary& summary);

// Plug-in mutual information in nats between feature and class.
WeightVector mutual_info_scores(const Dataset& data, const DataSummary& summary,
                                int bins = kDefaultBins);

}  // namespace relief
