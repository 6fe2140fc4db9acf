#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relief/baselines.hpp"
#include "relief/rba.hpp"
#include "relief/simgen.hpp"

namespace relief {

// Feature indices ordered by descending weight, ties by ascending index.
struct RankedList {
  std::vector<std::uint32_t> order;
};

RankedList rank_features(const WeightVector& w);

// Success at percentile p (1..100): the worst-ranked relevant feature sits
// within the top ceil(p/100 * a) positions. Percentile 0 is the stricter
// "optimal" condition: every relevant feature is ranked above every
// irrelevant one.
bool success_at_percentile(const RankedList& rl, const std::vector<std::size_t>& relevant,
                           int pct);
std::array<bool, 101> successes_for(const RankedList& rl,
                                    const std::vector<std::size_t>& relevant);

struct PowerCurve {
  std::string label;
  std::size_t replicates = 0;
  std::array<double, 101> power{};  // index 0 = optimal, 1..100 = percentile
};

PowerCurve power_curve(const std::string& label,
                       const std::vector<std::array<bool, 101>>& successes);

// An algorithm named on the CLI / in a benchmark config.
struct AlgorithmSpec {
  enum class Kind { Rba, ChiSquare, AnovaF, MutualInfo };
  Kind kind = Kind::Rba;
  NeighborSpec neighbors;
  int bins = kDefaultBins;
  std::string label;
};

// Accepted names: relieff[:k=K|:pct=P], surf, surfstar, multisurfstar,
// multisurf, chi2, anova_f, mutual_info[:bins=B].
AlgorithmSpec parse_algorithm(const std::string& text);

// Runs one algorithm on prepared data. `dm` may carry a precomputed distance
// matrix shared across algorithms; baselines ignore it.
WeightVector run_algorithm(const AlgorithmSpec& alg, const Dataset& data,
                           const DataSummary& summary, const DistanceMatrix* dm,
                           int threads = 1);

struct AlgorithmReport {
  std::string label;
  bool applicable = true;
  std::string skip_reason;
  PowerCurve curve;
  double score_seconds_total = 0.0;
};

struct BenchmarkConfig {
  std::string name;
  GenSpec generator;
  std::size_t replicates = 30;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> algorithms;
  int discrete_cutoff = kDefaultDiscreteCutoff;
};

BenchmarkConfig parse_benchmark_config_text(const std::string& json_text);
BenchmarkConfig parse_benchmark_config_file(const std::string& path);

struct BenchmarkReport {
  std::string name;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<AlgorithmReport> algorithms;
  PowerCurve shuffle_control;  // negative control: random feature order
  double distance_seconds_total = 0.0;
  std::string config_echo;
};

// Generates the replicates, runs every named algorithm plus the shuffle
// control, and times each scoring call. Unsupported algorithm/data
// combinations are recorded as not applicable and the run continues.
// Replicates may run in parallel; success booleans land in preallocated
// slots, so the report is identical for any worker count.
BenchmarkReport run_benchmark(const BenchmarkConfig& config, int threads = 1);

// <name>.power.tsv (algorithm, percentile, power) and <name>.summary.
void write_report_files(const BenchmarkReport& report, const std::string& out_dir);

// Ranked output contract: rank, feature name, weight with 10 significant
// digits, tab-separated, descending weight with index ties ascending.
void write_ranked_tsv(std::ostream& out, const WeightVector& w,
                      const std::vector<std::string>& names);

}  // namespace relief
