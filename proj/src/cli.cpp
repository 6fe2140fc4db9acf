// Command-line surface binding all modules into a usable tool.

#include "relief/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relief/baselines.hpp"
#include "relief/benchmark.hpp"
#include "relief/dataset.hpp"
#include "relief/distance.hpp"
#include "relief/errors.hpp"
#include "relief/parallel.hpp"
#include "relief/rba.hpp"
#include "relief/simgen.hpp"

namespace relief {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

struct CommonIo {
  std::string endpoint = kDefaultEndpointColumn;
  std::string missing_token = kDefaultMissingToken;
  std::string delimiter = "auto";
  int discrete_cutoff = kDefaultDiscreteCutoff;
};

char resolve_delimiter(const std::string& text) {
  if (text == "auto") return '\0';
  if (text == "tab") return '\t';
  if (text == "comma") return ',';
  throw ConfigError("--delimiter must be auto, tab, or comma");
}

LoadOptions load_options(const CommonIo& io) {
  LoadOptions opts;
  opts.endpoint_column = io.endpoint;
  opts.missing_token = io.missing_token;
  opts.delimiter = resolve_delimiter(io.delimiter);
  return opts;
}

void add_common(CLI::App* cmd, CommonIo& io) {
  cmd->add_option("--endpoint", io.endpoint, "Endpoint column name")
      ->default_val(std::string(kDefaultEndpointColumn));
  cmd->add_option("--missing-token", io.missing_token, "Missing value token")
      ->default_val(std::string(kDefaultMissingToken));
  cmd->add_option("--delimiter", io.delimiter, "auto|tab|comma")->default_val("auto");
  cmd->add_option("--discrete-cutoff", io.discrete_cutoff,
                  "Max distinct integral values for a discrete feature")
      ->default_val(kDefaultDiscreteCutoff);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw DataError("cannot write output file: " + path);
  return file;
}

const char* feature_type_name(const FeatureKind& kind) {
  if (kind.constant) return "constant";
  return kind.type == FeatureType::Discrete ? "discrete" : "continuous";
}

int cmd_profile(const std::string& input, const CommonIo& io, const std::string& output) {
  const Dataset data = load_dataset_file(input, load_options(io));
  const DataSummary summary = profile(data, io.discrete_cutoff);

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "instances: " << data.n << '\n';
  out << "features: " << data.a << '\n';
  const EndpointKind& ek = summary.endpoint_kind;
  switch (ek.type) {
    case EndpointType::Binary:
    case EndpointType::MultiClass: {
      out << "endpoint: " << (ek.type == EndpointType::Binary ? "binary" : "multiclass")
          << " classes=" << ek.num_classes() << " counts=";
      for (std::size_t c = 0; c < ek.class_counts.size(); ++c) {
        if (c) out << '/';
        out << ek.class_counts[c];
      }
      out << '\n';
      break;
    }
    case EndpointType::Continuous:
      out << "endpoint: continuous sigma=" << format_double(ek.sigma) << '\n';
      break;
  }
  out << "missing: " << (summary.has_missing ? "yes" : "no") << '\n';
  for (std::size_t j = 0; j < data.a; ++j) {
    const FeatureKind& kind = summary.feature_kinds[j];
    out << data.feature_names[j] << '\t' << feature_type_name(kind);
    if (kind.type == FeatureType::Continuous && !kind.constant) {
      out << "\tmin=" << format_double(kind.observed_min)
          << "\tmax=" << format_double(kind.observed_max);
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_score(const std::string& input, const CommonIo& io, const std::string& algorithm,
              int bins, int threads, const std::string& output,
              const std::string& cache_dir) {
  AlgorithmSpec alg = parse_algorithm(algorithm);
  if (alg.kind == AlgorithmSpec::Kind::MutualInfo && bins > 0) alg.bins = bins;

  Dataset raw = load_dataset_file(input, load_options(io));
  Prepared prep = prepare(std::move(raw), io.discrete_cutoff, io.missing_token);
  const int workers = resolve_threads(threads);

  WeightVector w;
  if (alg.kind == AlgorithmSpec::Kind::Rba) {
    DistanceMatrix dm;
    bool have_dm = false;
    if (!cache_dir.empty() && !prep.summary.has_missing) {
      const std::uint64_t hash = dataset_content_hash(prep.data);
      char name[32];
      std::snprintf(name, sizeof(name), "%016llx.dmat",
                    static_cast<unsigned long long>(hash));
      const std::string path = cache_dir + "/" + name;
      if (auto cached = load_distance_cache(path, prep.data.n, prep.data.a, hash)) {
        dm = std::move(*cached);
        have_dm = true;
      } else {
        dm = pairwise_distances(prep.data, prep.summary, workers);
        have_dm = true;
        save_distance_cache(path, dm, prep.data.a, hash);
      }
    }
    if (!have_dm) dm = pairwise_distances(prep.data, prep.summary, workers);
    w = score(prep.data, prep.summary, alg.neighbors, dm, workers);
  } else {
    w = run_algorithm(alg, prep.data, prep.summary, nullptr, workers);
  }

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  write_ranked_tsv(out, w, prep.data.feature_names);
  return kExitOk;
}

int cmd_generate(const std::string& spec_path, std::optional<std::uint64_t> seed,
                 const std::string& output) {
  if (!seed.has_value()) throw ConfigError("generate: --seed is required");
  const GenSpec spec = parse_genspec_file(spec_path);
  const SimResult result = generate(spec, *seed);

  std::ofstream data_out(output);
  if (!data_out) throw DataError("cannot write output file: " + output);
  write_dataset(data_out, result.data);

  std::ofstream manifest_out(output + ".manifest");
  if (!manifest_out) throw DataError("cannot write manifest file: " + output + ".manifest");
  write_manifest(manifest_out, spec, *seed, result);
  return kExitOk;
}

int cmd_benchmark(const std::string& config_path, std::optional<std::uint64_t> seed,
                  int threads, const std::string& out_dir) {
  BenchmarkConfig config = parse_benchmark_config_file(config_path);
  if (seed.has_value()) {
    config.seed = *seed;
    config.seed_set = true;
  }
  const BenchmarkReport report = run_benchmark(config, resolve_threads(threads));
  write_report_files(report, out_dir);
  std::cout << "wrote " << out_dir << "/" << report.name << ".power.tsv and ."
            << "summary (" << report.replicates << " replicates)\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Relief-based feature selection and benchmarking"};
  app.require_subcommand(1);

  CommonIo io;

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Describe dataset types");
  std::string profile_input, profile_output;
  profile_cmd->add_option("input", profile_input, "Dataset file")->required();
  profile_cmd->add_option("--output", profile_output, "Output file (default stdout)");
  add_common(profile_cmd, io);

  // score
  auto* score_cmd = app.add_subcommand("score", "Rank features by relevance");
  std::string score_input, score_output, score_algorithm, score_cache;
  int score_bins = 0;
  int score_threads = 0;
  score_cmd->add_option("input", score_input, "Dataset file")->required();
  score_cmd->add_option("--algorithm", score_algorithm, "Algorithm name")->required();
  score_cmd->add_option("--bins", score_bins, "Bins for mutual_info on continuous features");
  score_cmd->add_option("--threads", score_threads, "Worker threads (0 = auto)");
  score_cmd->add_option("--output", score_output, "Output file (default stdout)");
  score_cmd->add_option("--cache-dir", score_cache, "Distance matrix cache directory");
  add_common(score_cmd, io);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset");
  std::string gen_spec, gen_output;
  std::optional<std::uint64_t> gen_seed;
  gen_cmd->add_option("--spec", gen_spec, "Generator spec (JSON file)")->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--output", gen_output, "Output dataset path")->required();

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "Run a power-analysis benchmark");
  std::string bench_config, bench_outdir = ".";
  std::optional<std::uint64_t> bench_seed;
  int bench_threads = 0;
  bench_cmd->add_option("--config", bench_config, "Benchmark config (JSON file)")->required();
  bench_cmd->add_option("--seed", bench_seed, "Override the config seed");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads (0 = auto)");
  bench_cmd->add_option("--output-dir", bench_outdir, "Report output directory");

  try {
    app.parse(argc, argv);
    if (profile_cmd->parsed()) return cmd_profile(profile_input, io, profile_output);
    if (score_cmd->parsed()) {
      return cmd_score(score_input, io, score_algorithm, score_bins, score_threads,
                       score_output, score_cache);
    }
    if (gen_cmd->parsed()) return cmd_generate(gen_spec, gen_seed, gen_output);
    if (bench_cmd->parsed()) {
      return cmd_benchmark(bench_config, bench_seed, bench_threads, bench_outdir);
    }
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const relief::ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const UnsupportedError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace relief
