#pragma once

// Hand-written fixture datasets shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "relief/dataset.hpp"

namespace fixtures {

// Eight instances, three binary features, balanced binary class. The class
// is the XOR of A1 and A2; A3 is irrelevant. Every instance has one hit at
// distance 1, one at 2, one at 3, and two misses at each of 1 and 2.
inline relief::Dataset epistasis_toy() {
  relief::Dataset d;
  d.feature_names = {"A1", "A2", "A3"};
  d.n = 8;
  d.a = 3;
  d.values = {
      1, 0, 1,
      1, 0, 0,
      0, 1, 1,
      0, 1, 0,
      0, 0, 1,
      0, 0, 0,
      1, 1, 1,
      1, 1, 0,
  };
  d.endpoint = {1, 1, 1, 1, 0, 0, 0, 0};
  return d;
}

inline std::string epistasis_toy_tsv() {
  return
      "A1\tA2\tA3\tClass\n"
      "1\t0\t1\t1\n"
      "1\t0\t0\t1\n"
      "0\t1\t1\t1\n"
      "0\t1\t0\t1\n"
      "0\t0\t1\t0\n"
      "0\t0\t0\t0\n"
      "1\t1\t1\t0\n"
      "1\t1\t0\t0\n";
}

// Eight instances, A1 carries a perfect main effect, A2 and A3 are noise
// patterned so each instance has an exact duplicate of its own class.
inline relief::Dataset main_effect_toy() {
  relief::Dataset d;
  d.feature_names = {"A1", "A2", "A3"};
  d.n = 8;
  d.a = 3;
  d.values = {
      1, 0, 1,
      1, 1, 0,
      1, 0, 1,
      1, 1, 0,
      0, 0, 1,
      0, 1, 0,
      0, 0, 1,
      0, 1, 0,
  };
  d.endpoint = {1, 1, 1, 1, 0, 0, 0, 0};
  return d;
}

// Six instances, three classes; F1 determines the class exactly, F2 is
// noise.
inline relief::Dataset three_class_toy() {
  relief::Dataset d;
  d.feature_names = {"F1", "F2"};
  d.n = 6;
  d.a = 2;
  d.values = {
      0, 1,
      0, 0,
      1, 1,
      1, 0,
      2, 1,
      2, 0,
  };
  d.endpoint = {0, 0, 1, 1, 2, 2};
  return d;
}

}  // namespace fixtures
