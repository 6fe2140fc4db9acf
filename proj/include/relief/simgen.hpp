#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relief/dataset.hpp"

namespace relief {

// Probability of case status per multi-feature genotype combination.
// Stored flat with genotype digits in base 3, first feature most significant.
struct PenetranceTable {
  int order = 2;          // number of interacting features (2 or 3)
  std::vector<double> p;  // 3^order probabilities in [0, 1]

  double at(int g1, int g2) const { return p[static_cast<std::size_t>(g1 * 3 + g2)]; }
  double at(int g1, int g2, int g3) const {
    return p[static_cast<std::size_t>((g1 * 3 + g2) * 3 + g3)];
  }
};

// Built-in parity tables. At an allele frequency of 0.5 their single-feature
// penetrance marginals are flat, so the interaction carries no main effect.
PenetranceTable xor2_penetrance();
PenetranceTable xor3_penetrance();
// Interpolates every probability toward 0.5: scale 0 leaves the table
// unchanged, scale 1 removes all signal.
PenetranceTable with_noise(const PenetranceTable& table, double scale);

struct SimResult {
  Dataset data;
  std::vector<std::size_t> relevant;  // ground-truth feature indices, sorted
};

SimResult gen_xor(int order, std::size_t n, std::size_t a, std::uint64_t seed);
SimResult gen_multiplexer(int address_bits, std::size_t n, std::uint64_t seed);
SimResult gen_main_effect(double effect_strength, std::size_t n, std::size_t a,
                          std::uint64_t seed, std::size_t num_relevant = 1,
                          std::vector<double> relevance_weights = {});
SimResult gen_penetrance_epistasis(const PenetranceTable& table, double maf, std::size_t n,
                                   std::size_t a, std::uint64_t seed);
SimResult gen_multiclass(int classes, std::size_t n, std::size_t a, std::uint64_t seed);

enum class ContinuousMode { AllFeatures, HalfFeatures, Endpoint1Threshold };

// Genotype 0/1/2 cells become uniform draws from [0,50), [50,100), [100,150);
// a binary endpoint becomes a draw from [0,50) or [50,100).
Dataset transform_continuous(const Dataset& data, ContinuousMode mode, std::uint64_t seed);

// Each feature cell is independently replaced by the missing marker.
Dataset inject_missing(const Dataset& data, double freq, std::uint64_t seed);

// Resamples a binary-endpoint dataset to the requested majority share at
// constant n (subsampling one class, oversampling the other as needed).
Dataset rebalance(const Dataset& data, double majority_fraction, std::uint64_t seed);

struct TransformSpec {
  enum class Op { Continuous, Missing, Rebalance };
  Op op = Op::Missing;
  ContinuousMode mode = ContinuousMode::AllFeatures;
  double freq = 0.0;      // Missing
  double majority = 0.9;  // Rebalance
};

// Declarative description of a generated dataset: one generator plus an
// ordered list of post-hoc transforms.
struct GenSpec {
  std::string kind;  // xor|multiplexer|main_effect|penetrance|multiclass|heterogeneous
  std::size_t n = 0;
  std::size_t a = 0;
  std::uint64_t seed = 0;
  int order = 2;                    // xor, penetrance
  int address_bits = 2;             // multiplexer
  double effect_strength = 0.0;     // main_effect label-flip probability
  std::size_t num_relevant = 1;     // main_effect
  std::vector<double> weights;      // main_effect relevance weights
  double maf = 0.5;                 // penetrance
  double noise = 0.0;               // penetrance noise scale
  std::optional<std::vector<double>> custom_table;  // penetrance, overrides built-in
  int classes = 3;                  // multiclass
  double ratio = 0.5;               // heterogeneous share of model A
  std::vector<GenSpec> sub;         // heterogeneous sub-models (exactly 2)
  std::vector<std::size_t> slots;   // fixed relevant positions, drawn if empty
  std::vector<TransformSpec> transforms;
};

// Heterogeneous composition: a fraction of instances is labeled by sub-model
// A (model-B features random for them), the rest by sub-model B. Sub-model
// slots must be disjoint.
SimResult gen_heterogeneous(const GenSpec& model_a, const GenSpec& model_b, double ratio,
                            std::size_t n, std::size_t a, std::uint64_t seed);

// Runs the generator named by the spec and applies its transforms. The seed
// argument overrides spec.seed when present (replicate indexing).
SimResult generate(const GenSpec& spec, std::optional<std::uint64_t> seed_override = {});

GenSpec parse_genspec_text(const std::string& json_text);
GenSpec parse_genspec_file(const std::string& path);

// Sidecar ground-truth manifest: kind, parameters, seed, relevant indices.
void write_manifest(std::ostream& out, const GenSpec& spec, std::uint64_t seed,
                    const SimResult& result);

}  // namespace relief
