#pragma once

// Exhaustive reference scorer used to validate the engine. Written as plain
// nested loops over raw arrays on purpose: it shares no code with the
// library's scoring path and recomputes type inference, normalization,
// distances, neighbor selection, and weight updates from scratch.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

struct Input {
  std::size_t n = 0;
  std::size_t a = 0;
  std::vector<double> cells;     // row-major n*a, NaN = missing
  std::vector<double> endpoint;  // length n, no NaN
};

enum class Alg { ReliefF, ReliefFPercent, Surf, SurfStar, MultiSurfStar, MultiSurf };

// Final clipped weights for one algorithm. k applies to ReliefF, pct to
// ReliefFPercent (k = max(1, floor(pct * n / 2))).
std::vector<double> score(const Input& in, Alg alg, int k, double pct,
                          int discrete_cutoff = 10);

}  // namespace oracle
