#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace relief {

inline constexpr int kDefaultDiscreteCutoff = 10;
inline constexpr const char* kDefaultMissingToken = "N/A";
inline constexpr const char* kDefaultEndpointColumn = "Class";

// Missing cells are carried as quiet NaN inside the value grid. The endpoint
// vector never contains NaN.
inline double missing_cell() { return std::nan(""); }
inline bool is_missing(double v) { return std::isnan(v); }

// Instance-major table of feature values plus an endpoint per instance.
struct Dataset {
  std::vector<std::string> feature_names;  // length a
  std::vector<double> values;              // row-major, n * a, NaN = missing
  std::vector<double> endpoint;            // length n
  std::size_t n = 0;
  std::size_t a = 0;

  // Populated only when the endpoint column held non-numeric labels; the
  // numeric endpoint codes then index into this sorted list.
  std::vector<std::string> endpoint_label_names;

  double cell(std::size_t i, std::size_t j) const { return values[i * a + j]; }
  double& cell(std::size_t i, std::size_t j) { return values[i * a + j]; }
};

enum class FeatureType { Discrete, Continuous };

struct FeatureKind {
  FeatureType type = FeatureType::Discrete;
  double observed_min = 0.0;  // meaningful for Continuous
  double observed_max = 0.0;
  bool constant = false;  // fewer than two distinct observed values
};

enum class EndpointType { Binary, MultiClass, Continuous };

struct EndpointKind {
  EndpointType type = EndpointType::Binary;
  std::vector<double> class_labels;        // sorted, discrete endpoints only
  std::vector<std::size_t> class_counts;   // aligned with class_labels
  double sigma = 0.0;                      // population std dev, continuous only
  double observed_min = 0.0;               // continuous only
  double observed_max = 0.0;

  bool discrete() const { return type != EndpointType::Continuous; }
  std::size_t num_classes() const { return class_labels.size(); }
  // Index into class_labels; labels are exact values, so equality search.
  std::size_t class_index(double label) const;
};

struct DataSummary {
  std::vector<FeatureKind> feature_kinds;
  EndpointKind endpoint_kind;
  bool has_missing = false;
  std::string missing_token = kDefaultMissingToken;
};

struct LoadOptions {
  std::string endpoint_column = kDefaultEndpointColumn;
  std::string missing_token = kDefaultMissingToken;
  char delimiter = '\0';  // '\0' = auto-detect from the header line
};

Dataset load_dataset(std::istream& in, const LoadOptions& opts = {});
Dataset load_dataset_file(const std::string& path, const LoadOptions& opts = {});

DataSummary profile(const Dataset& data, int discrete_cutoff = kDefaultDiscreteCutoff);

// Rescales every continuous feature and a continuous endpoint to [0, 1].
// `summary` is updated in place to describe the returned dataset (ranges
// become [0, 1], sigma is recomputed on the rescaled endpoint), so applying
// normalize a second time is an exact identity.
Dataset normalize(const Dataset& data, DataSummary& summary);

struct Prepared {
  Dataset data;
  DataSummary summary;
};

// profile + normalize in one step; the standard entry into scoring.
Prepared prepare(Dataset data, int discrete_cutoff = kDefaultDiscreteCutoff,
                 const std::string& missing_token = kDefaultMissingToken);

void write_dataset(std::ostream& out, const Dataset& data,
                   const std::string& endpoint_name = kDefaultEndpointColumn,
                   const std::string& missing_token = kDefaultMissingToken,
                   char delimiter = '\t');

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace relief
