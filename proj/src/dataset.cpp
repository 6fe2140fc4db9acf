// Dataset ingestion, automatic type profiling, and pre-normalization of
// continuous variables. Everything downstream assumes the dataset has been
// through prepare(): continuous columns rescaled to [0, 1] and the summary
// describing exactly the data it accompanies.

#include "relief/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "relief/errors.hpp"

namespace relief {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool parse_full_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool is_integral(double v) { return v == std::floor(v); }

double population_stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

std::size_t EndpointKind::class_index(double label) const {
  const auto it = std::lower_bound(class_labels.begin(), class_labels.end(), label);
  return static_cast<std::size_t>(it - class_labels.begin());
}

Dataset load_dataset(std::istream& in, const LoadOptions& opts) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty input: no header line");

  char delim = opts.delimiter;
  if (delim == '\0') delim = line.find('\t') != std::string::npos ? '\t' : ',';

  const std::vector<std::string> header = split_line(line, delim);
  std::size_t endpoint_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == opts.endpoint_column) {
      endpoint_col = c;
      break;
    }
  }
  if (endpoint_col == header.size()) {
    throw ConfigError("endpoint column '" + opts.endpoint_column + "' not found in header");
  }
  if (header.size() < 2) {
    throw DataError("dataset needs at least one feature besides the endpoint column");
  }

  Dataset data;
  data.a = header.size() - 1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != endpoint_col) data.feature_names.push_back(header[c]);
  }

  std::vector<std::string> endpoint_raw;
  std::size_t lineno = 1;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line, delim);
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == endpoint_col) {
        endpoint_raw.push_back(fields[c]);
        continue;
      }
      if (fields[c] == opts.missing_token) {
        data.values.push_back(missing_cell());
        continue;
      }
      double v;
      if (!parse_full_double(fields[c], v)) {
        throw ParseError("line " + std::to_string(lineno) + ": cell '" + fields[c] +
                         "' is not a number or the missing token");
      }
      data.values.push_back(v);
    }
  }
  data.n = endpoint_raw.size();
  if (data.n < 2) throw DataError("dataset needs at least two instances");

  // Endpoint: numeric if every value parses; otherwise the distinct labels
  // are interned in sorted order, so codes do not depend on row order.
  bool all_numeric = true;
  std::vector<double> numeric(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    if (endpoint_raw[i] == opts.missing_token) {
      throw DataError("missing value in endpoint column at data row " + std::to_string(i + 1));
    }
    if (!parse_full_double(endpoint_raw[i], numeric[i])) {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) {
    data.endpoint = std::move(numeric);
  } else {
    std::vector<std::string> labels = endpoint_raw;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    data.endpoint_label_names = labels;
    data.endpoint.resize(data.n);
    for (std::size_t i = 0; i < data.n; ++i) {
      const auto it = std::lower_bound(labels.begin(), labels.end(), endpoint_raw[i]);
      data.endpoint[i] = static_cast<double>(it - labels.begin());
    }
  }
  return data;
}

Dataset load_dataset_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  return load_dataset(in, opts);
}

DataSummary profile(const Dataset& data, int discrete_cutoff) {
  if (data.n < 2) throw DataError("profile: need at least two instances");
  if (data.a < 1) throw DataError("profile: need at least one feature");

  DataSummary summary;
  summary.feature_kinds.resize(data.a);

  bool has_missing = false;
  std::vector<double> observed;
  for (std::size_t j = 0; j < data.a; ++j) {
    observed.clear();
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, j);
      if (is_missing(v)) {
        has_missing = true;
      } else {
        observed.push_back(v);
      }
    }
    FeatureKind kind;
    std::sort(observed.begin(), observed.end());
    observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
    if (observed.size() <= 1) {
      // Constant (or fully missing) feature: kept, flagged, treated as
      // discrete so it never contributes a value difference.
      kind.type = FeatureType::Discrete;
      kind.constant = true;
    } else {
      const bool small = observed.size() <= static_cast<std::size_t>(discrete_cutoff);
      const bool integral = std::all_of(observed.begin(), observed.end(), is_integral);
      if (small && integral) {
        kind.type = FeatureType::Discrete;
      } else {
        kind.type = FeatureType::Continuous;
        kind.observed_min = observed.front();
        kind.observed_max = observed.back();
      }
    }
    summary.feature_kinds[j] = kind;
  }
  summary.has_missing = has_missing;

  // The endpoint is classified by the same cutoff rule.
  std::vector<double> distinct = data.endpoint;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() <= 1) throw DataError("constant endpoint: nothing to learn");

  EndpointKind ek;
  const bool small = distinct.size() <= static_cast<std::size_t>(discrete_cutoff);
  const bool integral = std::all_of(distinct.begin(), distinct.end(), is_integral);
  if (small && integral) {
    ek.type = distinct.size() == 2 ? EndpointType::Binary : EndpointType::MultiClass;
    ek.class_labels = distinct;
    ek.class_counts.assign(distinct.size(), 0);
    for (double y : data.endpoint) ++ek.class_counts[ek.class_index(y)];
  } else {
    ek.type = EndpointType::Continuous;
    ek.sigma = population_stddev(data.endpoint);
    ek.observed_min = distinct.front();
    ek.observed_max = distinct.back();
  }
  summary.endpoint_kind = ek;
  return summary;
}

Dataset normalize(const Dataset& data, DataSummary& summary) {
  Dataset out = data;
  for (std::size_t j = 0; j < data.a; ++j) {
    FeatureKind& kind = summary.feature_kinds[j];
    if (kind.type != FeatureType::Continuous || kind.constant) continue;
    const double lo = kind.observed_min;
    const double range = kind.observed_max - kind.observed_min;
    if (range <= 0.0) continue;
    for (std::size_t i = 0; i < data.n; ++i) {
      double& v = out.cell(i, j);
      if (!is_missing(v)) v = (v - lo) / range;
    }
    kind.observed_min = 0.0;
    kind.observed_max = 1.0;
  }
  EndpointKind& ek = summary.endpoint_kind;
  if (ek.type == EndpointType::Continuous) {
    const double lo = ek.observed_min;
    const double range = ek.observed_max - ek.observed_min;
    if (range > 0.0) {
      for (double& y : out.endpoint) y = (y - lo) / range;
      ek.observed_min = 0.0;
      ek.observed_max = 1.0;
    }
    double mean = 0.0;
    for (double y : out.endpoint) mean += y;
    mean /= static_cast<double>(out.n);
    double ss = 0.0;
    for (double y : out.endpoint) ss += (y - mean) * (y - mean);
    ek.sigma = std::sqrt(ss / static_cast<double>(out.n));
  }
  return out;
}

Prepared prepare(Dataset data, int discrete_cutoff, const std::string& missing_token) {
  DataSummary summary = profile(data, discrete_cutoff);
  summary.missing_token = missing_token;
  Dataset normalized = normalize(data, summary);
  return Prepared{std::move(normalized), std::move(summary)};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_dataset(std::ostream& out, const Dataset& data, const std::string& endpoint_name,
                   const std::string& missing_token, char delimiter) {
  for (std::size_t j = 0; j < data.a; ++j) {
    out << data.feature_names[j] << delimiter;
  }
  out << endpoint_name << '\n';
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.a; ++j) {
      const double v = data.cell(i, j);
      if (is_missing(v)) {
        out << missing_token;
      } else {
        out << format_double(v);
      }
      out << delimiter;
    }
    const double y = data.endpoint[i];
    if (!data.endpoint_label_names.empty()) {
      out << data.endpoint_label_names[static_cast<std::size_t>(y)];
    } else {
      out << format_double(y);
    }
    out << '\n';
  }
}

}  // namespace relief
