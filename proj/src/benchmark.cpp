// Replicate orchestration, percentile power analysis with a random-shuffle
// control, and report emission.

#include "relief/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relief/errors.hpp"
#include "relief/parallel.hpp"
#include "relief/rng.hpp"

namespace relief {

namespace {

constexpr std::uint64_t kShuffleSalt = 0xc0ffee1234567890ULL;

const char* kValidAlgorithms =
    "relieff:k=K, relieff:pct=P, surf, surfstar, multisurfstar, multisurf, "
    "chi2, anova_f, mutual_info";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_weight(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

RankedList rank_features(const WeightVector& w) {
  RankedList rl;
  rl.order.resize(w.weights.size());
  for (std::size_t i = 0; i < rl.order.size(); ++i) rl.order[i] = static_cast<std::uint32_t>(i);
  std::stable_sort(rl.order.begin(), rl.order.end(),
                   [&w](std::uint32_t x, std::uint32_t y) {
                     if (w.weights[x] != w.weights[y]) return w.weights[x] > w.weights[y];
                     return x < y;
                   });
  return rl;
}

bool success_at_percentile(const RankedList& rl, const std::vector<std::size_t>& relevant,
                           int pct) {
  if (relevant.empty()) throw ConfigError("success_at_percentile: empty relevant set");
  const std::size_t a = rl.order.size();
  std::size_t worst_rank = 0;  // 1-based position of the worst relevant feature
  std::vector<char> is_relevant(a, 0);
  for (std::size_t r : relevant) is_relevant.at(r) = 1;
  for (std::size_t pos = 0; pos < a; ++pos) {
    if (is_relevant[rl.order[pos]]) worst_rank = pos + 1;
  }
  if (pct <= 0) return worst_rank <= relevant.size();
  const auto cutoff = static_cast<std::size_t>(
      std::ceil(static_cast<double>(pct) / 100.0 * static_cast<double>(a)));
  return worst_rank <= cutoff;
}

std::array<bool, 101> successes_for(const RankedList& rl,
                                    const std::vector<std::size_t>& relevant) {
  std::array<bool, 101> out{};
  for (int pct = 0; pct <= 100; ++pct) out[static_cast<std::size_t>(pct)] =
      success_at_percentile(rl, relevant, pct);
  return out;
}

PowerCurve power_curve(const std::string& label,
                       const std::vector<std::array<bool, 101>>& successes) {
  if (successes.empty()) throw ConfigError("power_curve: need at least one replicate");
  PowerCurve pc;
  pc.label = label;
  pc.replicates = successes.size();
  for (std::size_t p = 0; p <= 100; ++p) {
    double sum = 0.0;
    for (const auto& s : successes) sum += s[p] ? 1.0 : 0.0;
    pc.power[p] = sum / static_cast<double>(successes.size());
  }
  return pc;
}

AlgorithmSpec parse_algorithm(const std::string& text) {
  AlgorithmSpec alg;
  alg.label = text;
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string param =
      colon == std::string::npos ? std::string{} : text.substr(colon + 1);

  auto parse_kv = [&](const std::string& key) -> std::string {
    const std::string prefix = key + "=";
    if (param.rfind(prefix, 0) != 0 || param.size() == prefix.size()) {
      throw ConfigError("algorithm '" + text + "': expected " + key +
                        "=<value>; valid names: " + kValidAlgorithms);
    }
    return param.substr(prefix.size());
  };

  if (name == "relieff") {
    if (param.empty()) {
      alg.neighbors = NeighborSpec::relieff(10);
      alg.label = alg.neighbors.label();
    } else if (param.rfind("k=", 0) == 0) {
      const std::string v = parse_kv("k");
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(v, &used);
      } catch (const std::exception&) {
        throw ConfigError("algorithm '" + text + "': k must be an integer");
      }
      if (used != v.size()) throw ConfigError("algorithm '" + text + "': k must be an integer");
      alg.neighbors = NeighborSpec::relieff(k);
    } else if (param.rfind("pct=", 0) == 0) {
      const std::string v = parse_kv("pct");
      std::size_t used = 0;
      double p = 0.0;
      try {
        p = std::stod(v, &used);
      } catch (const std::exception&) {
        throw ConfigError("algorithm '" + text + "': pct must be a number");
      }
      if (used != v.size()) throw ConfigError("algorithm '" + text + "': pct must be a number");
      alg.neighbors = NeighborSpec::relieff_percent(p);
    } else {
      throw ConfigError("algorithm '" + text + "': unknown parameter; valid names: " +
                        kValidAlgorithms);
    }
    alg.kind = AlgorithmSpec::Kind::Rba;
    return alg;
  }

  if (!param.empty() && name != "mutual_info") {
    throw ConfigError("algorithm '" + text + "' takes no parameters; valid names: " +
                      kValidAlgorithms);
  }
  if (name == "surf") {
    alg.neighbors = NeighborSpec::surf();
  } else if (name == "surfstar") {
    alg.neighbors = NeighborSpec::surf_star();
  } else if (name == "multisurfstar") {
    alg.neighbors = NeighborSpec::multisurf_star();
  } else if (name == "multisurf") {
    alg.neighbors = NeighborSpec::multisurf();
  } else if (name == "chi2") {
    alg.kind = AlgorithmSpec::Kind::ChiSquare;
  } else if (name == "anova_f") {
    alg.kind = AlgorithmSpec::Kind::AnovaF;
  } else if (name == "mutual_info") {
    alg.kind = AlgorithmSpec::Kind::MutualInfo;
    if (!param.empty()) {
      const std::string v = parse_kv("bins");
      std::size_t used = 0;
      int bins = 0;
      try {
        bins = std::stoi(v, &used);
      } catch (const std::exception&) {
        throw ConfigError("algorithm '" + text + "': bins must be an integer");
      }
      if (used != v.size() || bins < 1) {
        throw ConfigError("algorithm '" + text + "': bins must be a positive integer");
      }
      alg.bins = bins;
    }
  } else {
    throw ConfigError("unknown algorithm '" + text + "'; valid names: " + kValidAlgorithms);
  }
  return alg;
}

WeightVector run_algorithm(const AlgorithmSpec& alg, const Dataset& data,
                           const DataSummary& summary, const DistanceMatrix* dm,
                           int threads) {
  switch (alg.kind) {
    case AlgorithmSpec::Kind::Rba:
      if (dm != nullptr) return score(data, summary, alg.neighbors, *dm, threads);
      return score(data, summary, alg.neighbors, threads);
    case AlgorithmSpec::Kind::ChiSquare:
      return chi_square_scores(data, summary);
    case AlgorithmSpec::Kind::AnovaF:
      return anova_f_scores(data, summary);
    case AlgorithmSpec::Kind::MutualInfo:
      return mutual_info_scores(data, summary, alg.bins);
  }
  throw Error("unreachable algorithm kind");
}

BenchmarkConfig parse_benchmark_config_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("benchmark config is not valid JSON: ") + e.what());
  }
  BenchmarkConfig cfg;
  try {
    cfg.name = j.at("name").get<std::string>();
    cfg.generator = parse_genspec_text(j.at("generator").dump());
    cfg.replicates = j.value("replicates", std::size_t{30});
    if (j.contains("seed")) {
      cfg.seed = j.at("seed").get<std::uint64_t>();
      cfg.seed_set = true;
    }
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    cfg.discrete_cutoff = j.value("discrete_cutoff", kDefaultDiscreteCutoff);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("benchmark config: ") + e.what());
  }
  if (cfg.replicates < 1) throw ConfigError("benchmark config: replicates must be >= 1");
  if (cfg.algorithms.empty()) throw ConfigError("benchmark config: no algorithms listed");
  return cfg;
}

BenchmarkConfig parse_benchmark_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open benchmark config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_benchmark_config_text(buf.str());
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config, int threads) {
  if (!config.seed_set) {
    throw ConfigError("benchmark config: a seed is required (config \"seed\" or --seed)");
  }
  std::vector<AlgorithmSpec> algs;
  algs.reserve(config.algorithms.size());
  for (const std::string& name : config.algorithms) algs.push_back(parse_algorithm(name));
  bool any_rba = false;
  for (const AlgorithmSpec& alg : algs) {
    if (alg.kind == AlgorithmSpec::Kind::Rba) any_rba = true;
  }

  const std::size_t reps = config.replicates;
  const std::size_t num_algs = algs.size();

  // success[alg][rep], filled independently per replicate.
  std::vector<std::vector<std::array<bool, 101>>> success(
      num_algs, std::vector<std::array<bool, 101>>(reps));
  std::vector<std::array<bool, 101>> control_success(reps);
  std::vector<std::vector<char>> applicable(num_algs, std::vector<char>(reps, 1));
  std::vector<std::string> skip_reason(num_algs);
  std::vector<double> score_seconds(num_algs * reps, 0.0);
  std::vector<double> distance_seconds(reps, 0.0);
  std::mutex reason_mutex;

  parallel_blocks(reps, 1, threads, [&](std::size_t rep, std::size_t, std::size_t) {
    const std::uint64_t rep_seed = config.seed + rep;
    SimResult sim = generate(config.generator, rep_seed);
    Prepared prep = prepare(std::move(sim.data), config.discrete_cutoff);

    DistanceMatrix dm;
    bool have_dm = false;
    if (any_rba) {
      const auto t0 = std::chrono::steady_clock::now();
      dm = pairwise_distances(prep.data, prep.summary, 1);
      distance_seconds[rep] = seconds_since(t0);
      have_dm = true;
    }

    for (std::size_t ai = 0; ai < num_algs; ++ai) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const WeightVector w = run_algorithm(algs[ai], prep.data, prep.summary,
                                             have_dm ? &dm : nullptr, 1);
        score_seconds[ai * reps + rep] = seconds_since(t0);
        success[ai][rep] = successes_for(rank_features(w), sim.relevant);
      } catch (const UnsupportedError& e) {
        applicable[ai][rep] = 0;
        std::lock_guard<std::mutex> lock(reason_mutex);
        if (skip_reason[ai].empty()) skip_reason[ai] = e.what();
      }
    }

    // Negative control: a random feature order stands in for a score vector.
    Rng ctrl(splitmix64(rep_seed) ^ kShuffleSalt);
    RankedList shuffled;
    shuffled.order.resize(prep.data.a);
    for (std::size_t f = 0; f < prep.data.a; ++f) {
      shuffled.order[f] = static_cast<std::uint32_t>(f);
    }
    shuffle_inplace(shuffled.order, ctrl);
    control_success[rep] = successes_for(shuffled, sim.relevant);
  });

  BenchmarkReport report;
  report.name = config.name;
  report.replicates = reps;
  report.seed = config.seed;
  report.shuffle_control = power_curve("random_shuffle", control_success);
  for (double s : distance_seconds) report.distance_seconds_total += s;

  for (std::size_t ai = 0; ai < num_algs; ++ai) {
    AlgorithmReport ar;
    ar.label = algs[ai].label;
    ar.applicable =
        std::all_of(applicable[ai].begin(), applicable[ai].end(), [](char c) { return c != 0; });
    ar.skip_reason = skip_reason[ai];
    if (ar.applicable) {
      ar.curve = power_curve(ar.label, success[ai]);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        ar.score_seconds_total += score_seconds[ai * reps + rep];
      }
    }
    report.algorithms.push_back(std::move(ar));
  }

  std::ostringstream echo;
  echo << "name=" << config.name << " replicates=" << reps << " seed=" << config.seed
       << " generator=" << config.generator.kind << " n=" << config.generator.n
       << " a=" << config.generator.a;
  report.config_echo = echo.str();
  return report;
}

void write_report_files(const BenchmarkReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + report.name;

  std::ofstream tsv(base + ".power.tsv");
  if (!tsv) throw DataError("cannot write " + base + ".power.tsv");
  tsv << "algorithm\tpercentile\tpower\n";
  auto dump_curve = [&tsv](const PowerCurve& pc) {
    for (std::size_t p = 0; p <= 100; ++p) {
      tsv << pc.label << '\t' << p << '\t' << format_weight(pc.power[p]) << '\n';
    }
  };
  for (const AlgorithmReport& ar : report.algorithms) {
    if (ar.applicable) dump_curve(ar.curve);
  }
  dump_curve(report.shuffle_control);

  std::ofstream summary(base + ".summary");
  if (!summary) throw DataError("cannot write " + base + ".summary");
  summary << "benchmark: " << report.name << '\n';
  summary << "config: " << report.config_echo << '\n';
  summary << "replicates: " << report.replicates << '\n';
  summary << "seed: " << report.seed << '\n';
  summary << "percentile 0 row in the power table = optimal (all relevant above all "
             "irrelevant)\n";
  summary << "distance_seconds_total: " << format_weight(report.distance_seconds_total)
          << '\n';
  summary << "algorithms:\n";
  for (const AlgorithmReport& ar : report.algorithms) {
    summary << "  " << ar.label;
    if (ar.applicable) {
      const double mean = ar.score_seconds_total / static_cast<double>(report.replicates);
      summary << "\tapplicable=yes\tscore_seconds_total="
              << format_weight(ar.score_seconds_total)
              << "\tscore_seconds_mean=" << format_weight(mean)
              << "\tpower_optimal=" << format_weight(ar.curve.power[0]) << '\n';
    } else {
      summary << "\tapplicable=no\treason=" << ar.skip_reason << '\n';
    }
  }
  summary << "  random_shuffle\tcontrol=yes\tpower_optimal="
          << format_weight(report.shuffle_control.power[0]) << '\n';
}

void write_ranked_tsv(std::ostream& out, const WeightVector& w,
                      const std::vector<std::string>& names) {
  const RankedList rl = rank_features(w);
  for (std::size_t pos = 0; pos < rl.order.size(); ++pos) {
    const std::uint32_t f = rl.order[pos];
    out << (pos + 1) << '\t' << names[f] << '\t' << format_weight(w.weights[f]) << '\n';
  }
}

}  // namespace relief
