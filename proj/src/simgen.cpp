// Seeded synthetic dataset generators and post-hoc transforms. Identical
// spec + seed always yields a byte-identical dataset: generators draw in a
// fixed order (relevant slots, per-feature parameters, then cells row-major)
// and use only the hand-rolled samplers in rng.hpp.

#include "relief/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "relief/errors.hpp"
#include "relief/rng.hpp"

namespace relief {

namespace {

constexpr std::uint64_t kTransformSalt = 0x5eedf00d1234abcdULL;

std::vector<std::string> default_names(std::size_t a) {
  std::vector<std::string> names(a);
  for (std::size_t j = 0; j < a; ++j) names[j] = "F" + std::to_string(j + 1);
  return names;
}

Dataset blank(std::size_t n, std::size_t a) {
  Dataset d;
  d.n = n;
  d.a = a;
  d.values.assign(n * a, 0.0);
  d.endpoint.assign(n, 0.0);
  d.feature_names = default_names(a);
  return d;
}

int bit(Rng& rng) { return static_cast<int>(uniform_below(rng, 2)); }

// Genotype draw under Hardy-Weinberg proportions for minor allele frequency m.
int genotype(Rng& rng, double m) {
  const double u = uniform01(rng);
  const double p0 = (1.0 - m) * (1.0 - m);
  const double p1 = p0 + 2.0 * m * (1.0 - m);
  if (u < p0) return 0;
  if (u < p1) return 1;
  return 2;
}

double background_maf(Rng& rng) { return 0.05 + 0.45 * uniform01(rng); }

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void check_slots(const std::vector<std::size_t>& slots, std::size_t a, std::size_t count,
                 const char* who) {
  if (slots.size() != count) {
    throw SpecError(std::string(who) + ": expected " + std::to_string(count) +
                    " relevant slots, got " + std::to_string(slots.size()));
  }
  for (std::size_t s : slots) {
    if (s >= a) throw SpecError(std::string(who) + ": relevant slot out of range");
  }
  auto sorted = sorted_copy(slots);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SpecError(std::string(who) + ": duplicate relevant slots");
  }
}

std::vector<std::size_t> pick_slots(Rng& rng, const std::vector<std::size_t>& fixed,
                                    std::size_t count, std::size_t a, const char* who) {
  if (!fixed.empty()) {
    check_slots(fixed, a, count, who);
    return fixed;
  }
  return sample_distinct(rng, count, a);
}

SimResult gen_xor_slots(int order, std::size_t n, std::size_t a, Rng& rng,
                        const std::vector<std::size_t>& fixed_slots);

}  // namespace

PenetranceTable xor2_penetrance() {
  PenetranceTable t;
  t.order = 2;
  t.p.resize(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t.p[static_cast<std::size_t>(i * 3 + j)] = (i + j) % 2;
  }
  return t;
}

PenetranceTable xor3_penetrance() {
  PenetranceTable t;
  t.order = 3;
  t.p.resize(27);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        t.p[static_cast<std::size_t>((i * 3 + j) * 3 + k)] = (i + j + k) % 2;
      }
    }
  }
  return t;
}

PenetranceTable with_noise(const PenetranceTable& table, double scale) {
  if (scale < 0.0 || scale > 1.0) throw SpecError("penetrance noise scale must be in [0, 1]");
  PenetranceTable out = table;
  for (double& v : out.p) v = (1.0 - scale) * v + scale * 0.5;
  return out;
}

SimResult gen_xor(int order, std::size_t n, std::size_t a, std::uint64_t seed) {
  if (order < 2 || order > 5) throw SpecError("xor: order must be in [2, 5]");
  if (a < static_cast<std::size_t>(order)) throw SpecError("xor: need a >= order");
  if (n < 2) throw SpecError("xor: need n >= 2");
  Rng rng(seed);
  return gen_xor_slots(order, n, a, rng, {});
}

namespace {

SimResult gen_xor_slots(int order, std::size_t n, std::size_t a, Rng& rng,
                        const std::vector<std::size_t>& fixed_slots) {
  const std::vector<std::size_t> slots =
      pick_slots(rng, fixed_slots, static_cast<std::size_t>(order), a, "xor");
  SimResult res;
  res.data = blank(n, a);
  res.relevant = sorted_copy(slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) res.data.cell(i, j) = bit(rng);
    int parity = 0;
    for (std::size_t s : slots) parity ^= static_cast<int>(res.data.cell(i, s));
    res.data.endpoint[i] = parity;  // odd parity -> class 1
  }
  return res;
}

}  // namespace

SimResult gen_multiplexer(int address_bits, std::size_t n, std::uint64_t seed) {
  if (address_bits < 2 || address_bits > 7) {
    throw SpecError("multiplexer: address_bits must be in [2, 7]");
  }
  if (n < 2) throw SpecError("multiplexer: need n >= 2");
  const std::size_t registers = std::size_t{1} << address_bits;
  const std::size_t a = static_cast<std::size_t>(address_bits) + registers;
  Rng rng(seed);

  SimResult res;
  res.data = blank(n, a);
  for (int b = 0; b < address_bits; ++b) {
    res.data.feature_names[static_cast<std::size_t>(b)] = "A" + std::to_string(b);
  }
  for (std::size_t r = 0; r < registers; ++r) {
    res.data.feature_names[static_cast<std::size_t>(address_bits) + r] =
        "R" + std::to_string(r);
  }
  for (int b = 0; b < address_bits; ++b) {
    res.relevant.push_back(static_cast<std::size_t>(b));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) res.data.cell(i, j) = bit(rng);
    // A0 is the most significant address bit.
    std::size_t addr = 0;
    for (int b = 0; b < address_bits; ++b) {
      addr = (addr << 1) | static_cast<std::size_t>(res.data.cell(i, static_cast<std::size_t>(b)));
    }
    res.data.endpoint[i] = res.data.cell(i, static_cast<std::size_t>(address_bits) + addr);
  }
  return res;
}

SimResult gen_main_effect(double effect_strength, std::size_t n, std::size_t a,
                          std::uint64_t seed, std::size_t num_relevant,
                          std::vector<double> relevance_weights) {
  if (!(effect_strength >= 0.0) || effect_strength >= 0.5) {
    throw SpecError("main_effect: effect_strength must be in [0, 0.5)");
  }
  if (num_relevant < 1) throw SpecError("main_effect: need at least one relevant feature");
  if (a < num_relevant) throw SpecError("main_effect: need a >= num_relevant");
  if (relevance_weights.empty()) relevance_weights.assign(num_relevant, 1.0);
  if (relevance_weights.size() != num_relevant) {
    throw SpecError("main_effect: relevance weight count must match num_relevant");
  }
  double weight_sum = 0.0;
  for (double w : relevance_weights) {
    if (!(w > 0.0)) throw SpecError("main_effect: relevance weights must be positive");
    weight_sum += w;
  }

  Rng rng(seed);
  const std::vector<std::size_t> slots = pick_slots(rng, {}, num_relevant, a, "main_effect");
  std::vector<bool> is_relevant(a, false);
  for (std::size_t s : slots) is_relevant[s] = true;
  std::vector<double> mafs(a, 0.0);
  for (std::size_t j = 0; j < a; ++j) {
    if (!is_relevant[j]) mafs[j] = background_maf(rng);
  }

  SimResult res;
  res.data = blank(n, a);
  res.relevant = sorted_copy(slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) {
      res.data.cell(i, j) = is_relevant[j] ? bit(rng) : genotype(rng, mafs[j]);
    }
    // Class drawn from the additive liability of the relevant bits, then
    // flipped with the configured probability.
    double liability = 0.0;
    for (std::size_t r = 0; r < slots.size(); ++r) {
      liability += relevance_weights[r] * res.data.cell(i, slots[r]);
    }
    liability /= weight_sum;
    int label = bernoulli(rng, liability) ? 1 : 0;
    if (bernoulli(rng, effect_strength)) label = 1 - label;
    res.data.endpoint[i] = label;
  }
  return res;
}

namespace {

void validate_table(const PenetranceTable& table) {
  if (table.order < 2 || table.order > 3) {
    throw SpecError("penetrance: table order must be 2 or 3");
  }
  const std::size_t want = table.order == 2 ? 9 : 27;
  if (table.p.size() != want) throw SpecError("penetrance: table size does not match order");
  for (double v : table.p) {
    if (!(v >= 0.0) || v > 1.0) throw SpecError("penetrance: probabilities must be in [0, 1]");
  }
  const auto [mn, mx] = std::minmax_element(table.p.begin(), table.p.end());
  if (*mn == *mx) throw SpecError("penetrance: table is degenerate (one probability)");
}

SimResult gen_penetrance_slots(const PenetranceTable& table, double maf, std::size_t n,
                               std::size_t a, Rng& rng,
                               const std::vector<std::size_t>& fixed_slots) {
  const auto order = static_cast<std::size_t>(table.order);
  const std::vector<std::size_t> slots = pick_slots(rng, fixed_slots, order, a, "penetrance");
  std::vector<bool> is_relevant(a, false);
  for (std::size_t s : slots) is_relevant[s] = true;
  std::vector<double> mafs(a, 0.0);
  for (std::size_t j = 0; j < a; ++j) {
    mafs[j] = is_relevant[j] ? maf : background_maf(rng);
  }

  SimResult res;
  res.data = blank(n, a);
  res.relevant = sorted_copy(slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) res.data.cell(i, j) = genotype(rng, mafs[j]);
    double pen;
    if (table.order == 2) {
      pen = table.at(static_cast<int>(res.data.cell(i, slots[0])),
                     static_cast<int>(res.data.cell(i, slots[1])));
    } else {
      pen = table.at(static_cast<int>(res.data.cell(i, slots[0])),
                     static_cast<int>(res.data.cell(i, slots[1])),
                     static_cast<int>(res.data.cell(i, slots[2])));
    }
    res.data.endpoint[i] = bernoulli(rng, pen) ? 1 : 0;
  }
  return res;
}

}  // namespace

SimResult gen_penetrance_epistasis(const PenetranceTable& table, double maf, std::size_t n,
                                   std::size_t a, std::uint64_t seed) {
  validate_table(table);
  if (!(maf > 0.0) || maf > 0.5) throw SpecError("penetrance: maf must be in (0, 0.5]");
  if (a < static_cast<std::size_t>(table.order)) throw SpecError("penetrance: need a >= order");
  Rng rng(seed);
  return gen_penetrance_slots(table, maf, n, a, rng, {});
}

SimResult gen_multiclass(int classes, std::size_t n, std::size_t a, std::uint64_t seed) {
  if (classes < 2 || classes > 9 || (classes > 5 && classes != 9)) {
    throw SpecError("multiclass: classes must be in [2, 5] or 9");
  }
  if (a < 2) throw SpecError("multiclass: need a >= 2");
  Rng rng(seed);
  const std::vector<std::size_t> slots = pick_slots(rng, {}, 2, a, "multiclass");
  std::vector<bool> is_relevant(a, false);
  for (std::size_t s : slots) is_relevant[s] = true;
  std::vector<double> mafs(a, 0.0);
  for (std::size_t j = 0; j < a; ++j) {
    mafs[j] = is_relevant[j] ? 0.5 : background_maf(rng);
  }

  SimResult res;
  res.data = blank(n, a);
  res.relevant = sorted_copy(slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) res.data.cell(i, j) = genotype(rng, mafs[j]);
    const int g1 = static_cast<int>(res.data.cell(i, slots[0]));
    const int g2 = static_cast<int>(res.data.cell(i, slots[1]));
    // Impure mapping: each genotype pair gets a class and each single
    // genotype shifts the class distribution, so marginal effects exist.
    const int label = classes == 9 ? 3 * g1 + g2 : (g1 + g2) % classes;
    res.data.endpoint[i] = label;
  }
  return res;
}

SimResult gen_heterogeneous(const GenSpec& model_a, const GenSpec& model_b, double ratio,
                            std::size_t n, std::size_t a, std::uint64_t seed) {
  if (!(ratio > 0.0) || ratio > 1.0) throw SpecError("heterogeneous: ratio must be in (0, 1]");
  auto sub_order = [](const GenSpec& s) -> std::size_t {
    if (s.kind == "xor") return static_cast<std::size_t>(s.order);
    if (s.kind == "penetrance") return static_cast<std::size_t>(s.order);
    throw SpecError("heterogeneous: sub-models must be xor or penetrance");
  };
  const std::size_t order_a = sub_order(model_a);
  const std::size_t order_b = sub_order(model_b);
  if (a < order_a + order_b) throw SpecError("heterogeneous: need a >= total relevant count");

  Rng rng(seed);
  std::vector<std::size_t> slots_a = model_a.slots;
  std::vector<std::size_t> slots_b = model_b.slots;
  if (slots_a.empty() && slots_b.empty()) {
    const auto all = sample_distinct(rng, order_a + order_b, a);
    slots_a.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(order_a));
    slots_b.assign(all.begin() + static_cast<std::ptrdiff_t>(order_a), all.end());
  }
  check_slots(slots_a, a, order_a, "heterogeneous model A");
  check_slots(slots_b, a, order_b, "heterogeneous model B");
  for (std::size_t s : slots_a) {
    if (std::find(slots_b.begin(), slots_b.end(), s) != slots_b.end()) {
      throw SpecError("heterogeneous: sub-model relevant slots overlap");
    }
  }

  const bool snp_background = model_a.kind == "penetrance" || model_b.kind == "penetrance";
  std::vector<bool> in_a(a, false), in_b(a, false);
  for (std::size_t s : slots_a) in_a[s] = true;
  for (std::size_t s : slots_b) in_b[s] = true;
  std::vector<double> mafs(a, 0.0);
  for (std::size_t j = 0; j < a; ++j) {
    if (!in_a[j] && !in_b[j] && snp_background) mafs[j] = background_maf(rng);
  }

  PenetranceTable table_a, table_b;
  if (model_a.kind == "penetrance") {
    table_a = with_noise(model_a.custom_table
                             ? PenetranceTable{model_a.order, *model_a.custom_table}
                             : (model_a.order == 2 ? xor2_penetrance() : xor3_penetrance()),
                         model_a.noise);
    validate_table(table_a);
  }
  if (model_b.kind == "penetrance") {
    table_b = with_noise(model_b.custom_table
                             ? PenetranceTable{model_b.order, *model_b.custom_table}
                             : (model_b.order == 2 ? xor2_penetrance() : xor3_penetrance()),
                         model_b.noise);
    validate_table(table_b);
  }

  auto draw_feature = [&](Rng& r, std::size_t j, const GenSpec& owner, bool owned) -> double {
    if (owned) {
      return owner.kind == "xor" ? bit(r) : genotype(r, owner.maf);
    }
    return snp_background ? genotype(r, mafs[j]) : bit(r);
  };
  auto model_class = [&](const Dataset& d, std::size_t i, const GenSpec& m,
                         const std::vector<std::size_t>& slots,
                         const PenetranceTable& table, Rng& r) -> double {
    if (m.kind == "xor") {
      int parity = 0;
      for (std::size_t s : slots) parity ^= static_cast<int>(d.cell(i, s));
      return parity;
    }
    double pen;
    if (table.order == 2) {
      pen = table.at(static_cast<int>(d.cell(i, slots[0])),
                     static_cast<int>(d.cell(i, slots[1])));
    } else {
      pen = table.at(static_cast<int>(d.cell(i, slots[0])),
                     static_cast<int>(d.cell(i, slots[1])),
                     static_cast<int>(d.cell(i, slots[2])));
    }
    return bernoulli(r, pen) ? 1 : 0;
  };

  SimResult res;
  res.data = blank(n, a);
  res.relevant = slots_a;
  res.relevant.insert(res.relevant.end(), slots_b.begin(), slots_b.end());
  res.relevant = sorted_copy(res.relevant);

  const auto n_a = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    const bool use_a = i < n_a;
    for (std::size_t j = 0; j < a; ++j) {
      const bool owned_a = in_a[j];
      const bool owned_b = in_b[j];
      if (owned_a) {
        res.data.cell(i, j) = draw_feature(rng, j, model_a, true);
      } else if (owned_b) {
        res.data.cell(i, j) = draw_feature(rng, j, model_b, true);
      } else {
        res.data.cell(i, j) = draw_feature(rng, j, model_a, false);
      }
    }
    res.data.endpoint[i] = use_a ? model_class(res.data, i, model_a, slots_a, table_a, rng)
                                 : model_class(res.data, i, model_b, slots_b, table_b, rng);
  }

  // Mix the two blocks so instance order carries no signal.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  shuffle_inplace(perm, rng);
  Dataset mixed = blank(n, a);
  mixed.feature_names = res.data.feature_names;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) mixed.cell(i, j) = res.data.cell(perm[i], j);
    mixed.endpoint[i] = res.data.endpoint[perm[i]];
  }
  res.data = std::move(mixed);
  return res;
}

Dataset transform_continuous(const Dataset& data, ContinuousMode mode, std::uint64_t seed) {
  Rng rng(seed);
  Dataset out = data;
  if (mode == ContinuousMode::Endpoint1Threshold) {
    for (std::size_t i = 0; i < data.n; ++i) {
      const double y = data.endpoint[i];
      if (y != 0.0 && y != 1.0) {
        throw DataError("endpoint threshold transform requires binary 0/1 classes");
      }
      out.endpoint[i] = 50.0 * y + 50.0 * uniform01(rng);
    }
    return out;
  }

  std::vector<std::size_t> chosen;
  if (mode == ContinuousMode::AllFeatures) {
    chosen.resize(data.a);
    for (std::size_t j = 0; j < data.a; ++j) chosen[j] = j;
  } else {
    chosen = sorted_copy(sample_distinct(rng, data.a / 2, data.a));
  }
  for (std::size_t j : chosen) {
    for (std::size_t i = 0; i < data.n; ++i) {
      const double v = data.cell(i, j);
      if (is_missing(v)) continue;
      if (v != 0.0 && v != 1.0 && v != 2.0) {
        throw DataError("continuous transform requires genotype-coded (0/1/2) features");
      }
      out.cell(i, j) = 50.0 * v + 50.0 * uniform01(rng);
    }
  }
  return out;
}

Dataset inject_missing(const Dataset& data, double freq, std::uint64_t seed) {
  if (!(freq >= 0.0) || freq >= 1.0) throw SpecError("inject_missing: freq must be in [0, 1)");
  Rng rng(seed);
  Dataset out = data;
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.a; ++j) {
      if (bernoulli(rng, freq)) out.cell(i, j) = missing_cell();
    }
  }
  return out;
}

Dataset rebalance(const Dataset& data, double majority_fraction, std::uint64_t seed) {
  if (!(majority_fraction >= 0.5) || majority_fraction >= 1.0) {
    throw SpecError("rebalance: majority fraction must be in [0.5, 1)");
  }
  std::vector<double> labels = data.endpoint;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() != 2) throw SpecError("rebalance: endpoint must be binary");

  std::vector<std::size_t> pool0, pool1;
  for (std::size_t i = 0; i < data.n; ++i) {
    (data.endpoint[i] == labels[0] ? pool0 : pool1).push_back(i);
  }
  const bool zero_major = pool0.size() >= pool1.size();
  std::vector<std::size_t>& major = zero_major ? pool0 : pool1;
  std::vector<std::size_t>& minor = zero_major ? pool1 : pool0;

  const auto target_major =
      static_cast<std::size_t>(std::llround(majority_fraction * static_cast<double>(data.n)));
  const std::size_t target_minor = data.n - target_major;
  if (target_minor == 0 || major.empty() || minor.empty()) {
    throw SpecError("rebalance: requested class ratio is unreachable");
  }

  Rng rng(seed);
  auto take = [&rng](const std::vector<std::size_t>& pool, std::size_t want) {
    std::vector<std::size_t> out;
    if (want <= pool.size()) {
      std::vector<std::size_t> shuffled = pool;
      shuffle_inplace(shuffled, rng);
      out.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(want));
    } else {
      out = pool;
      while (out.size() < want) {
        out.push_back(pool[uniform_below(rng, pool.size())]);
      }
    }
    return out;
  };
  std::vector<std::size_t> rows = take(major, target_major);
  const std::vector<std::size_t> minor_rows = take(minor, target_minor);
  rows.insert(rows.end(), minor_rows.begin(), minor_rows.end());
  shuffle_inplace(rows, rng);

  Dataset out = blank(data.n, data.a);
  out.feature_names = data.feature_names;
  out.endpoint_label_names = data.endpoint_label_names;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < data.a; ++j) out.cell(i, j) = data.cell(rows[i], j);
    out.endpoint[i] = data.endpoint[rows[i]];
  }
  return out;
}

SimResult generate(const GenSpec& spec, std::optional<std::uint64_t> seed_override) {
  const std::uint64_t seed = seed_override.value_or(spec.seed);
  SimResult res;
  if (spec.kind == "xor") {
    res = gen_xor(spec.order, spec.n, spec.a, seed);
  } else if (spec.kind == "multiplexer") {
    res = gen_multiplexer(spec.address_bits, spec.n, seed);
  } else if (spec.kind == "main_effect") {
    res = gen_main_effect(spec.effect_strength, spec.n, spec.a, seed, spec.num_relevant,
                          spec.weights);
  } else if (spec.kind == "penetrance") {
    PenetranceTable table = spec.custom_table
                                ? PenetranceTable{spec.order, *spec.custom_table}
                                : (spec.order == 2 ? xor2_penetrance() : xor3_penetrance());
    table = with_noise(table, spec.noise);
    res = gen_penetrance_epistasis(table, spec.maf, spec.n, spec.a, seed);
  } else if (spec.kind == "multiclass") {
    res = gen_multiclass(spec.classes, spec.n, spec.a, seed);
  } else if (spec.kind == "heterogeneous") {
    if (spec.sub.size() != 2) {
      throw SpecError("heterogeneous: exactly two sub-models are required");
    }
    res = gen_heterogeneous(spec.sub[0], spec.sub[1], spec.ratio, spec.n, spec.a, seed);
  } else {
    throw SpecError("unknown generator kind: '" + spec.kind + "'");
  }

  for (std::size_t t = 0; t < spec.transforms.size(); ++t) {
    const TransformSpec& tr = spec.transforms[t];
    const std::uint64_t tseed = splitmix64(seed ^ (kTransformSalt + t));
    switch (tr.op) {
      case TransformSpec::Op::Continuous:
        res.data = transform_continuous(res.data, tr.mode, tseed);
        break;
      case TransformSpec::Op::Missing:
        res.data = inject_missing(res.data, tr.freq, tseed);
        break;
      case TransformSpec::Op::Rebalance:
        res.data = rebalance(res.data, tr.majority, tseed);
        break;
    }
  }
  return res;
}

namespace {

using nlohmann::json;

GenSpec genspec_from_json(const json& j);

TransformSpec transform_from_json(const json& j) {
  TransformSpec t;
  const std::string op = j.at("op").get<std::string>();
  if (op == "continuous") {
    t.op = TransformSpec::Op::Continuous;
    const std::string mode = j.value("mode", "all");
    if (mode == "all") {
      t.mode = ContinuousMode::AllFeatures;
    } else if (mode == "half") {
      t.mode = ContinuousMode::HalfFeatures;
    } else if (mode == "endpoint1") {
      t.mode = ContinuousMode::Endpoint1Threshold;
    } else {
      throw SpecError("transform continuous: unknown mode '" + mode + "'");
    }
  } else if (op == "missing") {
    t.op = TransformSpec::Op::Missing;
    t.freq = j.at("freq").get<double>();
  } else if (op == "rebalance") {
    t.op = TransformSpec::Op::Rebalance;
    t.majority = j.at("majority").get<double>();
  } else {
    throw SpecError("unknown transform op: '" + op + "'");
  }
  return t;
}

GenSpec genspec_from_json(const json& j) {
  GenSpec s;
  s.kind = j.at("kind").get<std::string>();
  s.n = j.value("n", std::size_t{0});
  s.a = j.value("a", std::size_t{0});
  s.seed = j.value("seed", std::uint64_t{0});
  s.order = j.value("order", 2);
  s.address_bits = j.value("address_bits", 2);
  s.effect_strength = j.value("effect_strength", 0.0);
  s.num_relevant = j.value("num_relevant", std::size_t{1});
  if (j.contains("weights")) s.weights = j.at("weights").get<std::vector<double>>();
  s.maf = j.value("maf", 0.5);
  s.noise = j.value("noise", 0.0);
  if (j.contains("table")) {
    s.custom_table = j.at("table").get<std::vector<double>>();
  }
  s.classes = j.value("classes", 3);
  s.ratio = j.value("ratio", 0.5);
  if (j.contains("slots")) s.slots = j.at("slots").get<std::vector<std::size_t>>();
  if (j.contains("model_a") || j.contains("model_b")) {
    s.sub.push_back(genspec_from_json(j.at("model_a")));
    s.sub.push_back(genspec_from_json(j.at("model_b")));
  }
  if (j.contains("transforms")) {
    for (const auto& t : j.at("transforms")) s.transforms.push_back(transform_from_json(t));
  }
  if (s.kind == "multiplexer") {
    const std::size_t derived =
        static_cast<std::size_t>(s.address_bits) + (std::size_t{1} << s.address_bits);
    if (s.a != 0 && s.a != derived) {
      throw SpecError("multiplexer: a must be address_bits + 2^address_bits");
    }
    s.a = derived;
  }
  return s;
}

}  // namespace

GenSpec parse_genspec_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("generator spec is not valid JSON: ") + e.what());
  }
  try {
    return genspec_from_json(j);
  } catch (const json::exception& e) {
    throw SpecError(std::string("generator spec: ") + e.what());
  }
}

GenSpec parse_genspec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open generator spec file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_genspec_text(buf.str());
}

void write_manifest(std::ostream& out, const GenSpec& spec, std::uint64_t seed,
                    const SimResult& result) {
  out << "kind: " << spec.kind << '\n';
  out << "n: " << result.data.n << '\n';
  out << "a: " << result.data.a << '\n';
  out << "seed: " << seed << '\n';
  if (spec.kind == "xor" || spec.kind == "penetrance") out << "order: " << spec.order << '\n';
  if (spec.kind == "multiplexer") out << "address_bits: " << spec.address_bits << '\n';
  if (spec.kind == "main_effect") {
    out << "effect_strength: " << format_double(spec.effect_strength) << '\n';
    out << "num_relevant: " << spec.num_relevant << '\n';
  }
  if (spec.kind == "penetrance") {
    out << "maf: " << format_double(spec.maf) << '\n';
    out << "noise: " << format_double(spec.noise) << '\n';
  }
  if (spec.kind == "multiclass") out << "classes: " << spec.classes << '\n';
  if (spec.kind == "heterogeneous") out << "ratio: " << format_double(spec.ratio) << '\n';
  if (!spec.transforms.empty()) {
    out << "transforms:";
    for (const TransformSpec& t : spec.transforms) {
      switch (t.op) {
        case TransformSpec::Op::Continuous:
          out << " continuous:"
              << (t.mode == ContinuousMode::AllFeatures
                      ? "all"
                      : t.mode == ContinuousMode::HalfFeatures ? "half" : "endpoint1");
          break;
        case TransformSpec::Op::Missing:
          out << " missing:" << format_double(t.freq);
          break;
        case TransformSpec::Op::Rebalance:
          out << " rebalance:" << format_double(t.majority);
          break;
      }
    }
    out << '\n';
  }
  out << "relevant:";
  for (std::size_t r : result.relevant) out << ' ' << r;
  out << '\n';
}

}  // namespace relief
