// The O(n^2 * a) kernel: per-feature diff, missing-aware pairwise Manhattan
// distances, per-target distance statistics, and the optional binary cache.

#include "relief/distance.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "relief/errors.hpp"
#include "relief/parallel.hpp"

namespace relief {

namespace {

constexpr char kCacheMagic[8] = {'R', 'B', 'D', 'M', 'A', 'T', '0', '1'};

// Row block size for parallel pair computation. Each block owns a disjoint
// slice of the condensed array, so scheduling cannot affect the result.
constexpr std::size_t kRowBlock = 16;

double diff_values(double va, double vb, const FeatureKind& kind) {
  if (is_missing(va) || is_missing(vb)) return std::nan("");
  if (kind.type == FeatureType::Discrete) {
    return va == vb ? 0.0 : 1.0;
  }
  const double range = kind.observed_max - kind.observed_min;
  return std::abs(va - vb) / range;
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xff);
  out.write(buf, 8);
}

bool get_u64(std::ifstream& in, std::uint64_t& v) {
  char buf[8];
  if (!in.read(buf, 8)) return false;
  v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[b])) << (8 * b);
  }
  return true;
}

}  // namespace

double diff(std::size_t feature, std::size_t i, std::size_t j, const Dataset& data,
            const DataSummary& summary) {
  return diff_values(data.cell(i, feature), data.cell(j, feature),
                     summary.feature_kinds[feature]);
}

DistanceMatrix pairwise_distances(const Dataset& data, const DataSummary& summary,
                                  int threads) {
  if (data.n < 2) throw DataError("pairwise_distances: need at least two instances");
  const std::size_t n = data.n;
  const std::size_t a = data.a;

  DistanceMatrix dm;
  dm.n = n;
  dm.d.resize(n * (n - 1) / 2);
  dm.valid.resize(dm.d.size());

  const bool has_missing = summary.has_missing;
  const auto& kinds = summary.feature_kinds;

  parallel_blocks(n - 1, kRowBlock, threads,
                  [&](std::size_t /*block*/, std::size_t row_lo, std::size_t row_hi) {
    for (std::size_t i = row_lo; i < row_hi; ++i) {
      const double* ri = data.values.data() + i * a;
      std::size_t idx = dm.index(i, i + 1);
      for (std::size_t j = i + 1; j < n; ++j, ++idx) {
        const double* rj = data.values.data() + j * a;
        double sum = 0.0;
        std::uint32_t valid = 0;
        if (!has_missing) {
          for (std::size_t f = 0; f < a; ++f) {
            if (kinds[f].type == FeatureType::Discrete) {
              sum += ri[f] == rj[f] ? 0.0 : 1.0;
            } else {
              sum += std::abs(ri[f] - rj[f]) / (kinds[f].observed_max - kinds[f].observed_min);
            }
          }
          valid = static_cast<std::uint32_t>(a);
        } else {
          for (std::size_t f = 0; f < a; ++f) {
            const double d = diff_values(ri[f], rj[f], kinds[f]);
            if (is_skip(d)) continue;
            sum += d;
            ++valid;
          }
          if (valid == 0) {
            throw DataError("instances " + std::to_string(i) + " and " + std::to_string(j) +
                            " share no observed features; no distance is defined");
          }
          if (valid < a) {
            sum *= static_cast<double>(a) / static_cast<double>(valid);
          }
        }
        dm.d[idx] = sum;
        dm.valid[idx] = valid;
      }
    }
  });
  return dm;
}

TargetStats target_stats(const DistanceMatrix& dm, std::size_t i) {
  const std::size_t n = dm.n;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) sum += dm.at(i, j);
  }
  const double mean = sum / static_cast<double>(n - 1);
  double ss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double dev = dm.at(i, j) - mean;
    ss += dev * dev;
  }
  return TargetStats{mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

double global_threshold(const DistanceMatrix& dm) {
  double sum = 0.0;
  for (double v : dm.d) sum += v;
  return sum / static_cast<double>(dm.d.size());
}

std::uint64_t dataset_content_hash(const Dataset& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  auto mix_u64 = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) mix_byte(static_cast<unsigned char>((v >> (8 * b)) & 0xff));
  };
  auto mix_double = [&](double v) {
    // Collapse every NaN payload to one canonical missing pattern.
    mix_u64(is_missing(v) ? 0x7ff8000000000000ULL : std::bit_cast<std::uint64_t>(v));
  };
  mix_u64(data.n);
  mix_u64(data.a);
  for (const auto& name : data.feature_names) {
    for (char c : name) mix_byte(static_cast<unsigned char>(c));
    mix_byte(0);
  }
  for (double v : data.values) mix_double(v);
  for (double v : data.endpoint) mix_double(v);
  return h;
}

bool save_distance_cache(const std::string& path, const DistanceMatrix& dm, std::size_t a,
                         std::uint64_t content_hash) {
  for (std::uint32_t v : dm.valid) {
    if (v != a) return false;  // cache covers complete data only
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(kCacheMagic, sizeof(kCacheMagic));
  put_u64(out, content_hash);
  put_u64(out, dm.n);
  put_u64(out, a);
  for (double v : dm.d) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return static_cast<bool>(out);
}

std::optional<DistanceMatrix> load_distance_cache(const std::string& path, std::size_t n,
                                                  std::size_t a, std::uint64_t content_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
    return std::nullopt;
  }
  std::uint64_t hash = 0, file_n = 0, file_a = 0;
  if (!get_u64(in, hash) || !get_u64(in, file_n) || !get_u64(in, file_a)) return std::nullopt;
  if (hash != content_hash || file_n != n || file_a != a) return std::nullopt;
  DistanceMatrix dm;
  dm.n = n;
  dm.d.resize(n * (n - 1) / 2);
  for (double& v : dm.d) {
    std::uint64_t bits;
    if (!get_u64(in, bits)) return std::nullopt;
    v = std::bit_cast<double>(bits);
  }
  dm.valid.assign(dm.d.size(), static_cast<std::uint32_t>(a));
  return dm;
}

}  // namespace relief
