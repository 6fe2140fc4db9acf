#pragma once

// Helpers shared by the unit and acceptance suites: a random small-dataset
// generator covering every endpoint/feature kind combination (used for the
// oracle equivalence checks and property tests) and temp-file plumbing.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "relief/dataset.hpp"
#include "relief/rng.hpp"

namespace testutil {

// Small random dataset: n in [2,12], a in [1,6], discrete / continuous /
// constant features, binary / 3-class / continuous endpoint, optional
// missing cells. Always satisfies the engine preconditions: endpoint not
// constant and every instance pair shares at least one observed feature.
inline relief::Dataset random_dataset(relief::Rng& rng, double missing_freq) {
  using relief::uniform01;
  using relief::uniform_below;
  for (;;) {
    relief::Dataset d;
    d.n = 2 + uniform_below(rng, 11);
    d.a = 1 + uniform_below(rng, 6);
    d.feature_names.resize(d.a);
    for (std::size_t j = 0; j < d.a; ++j) d.feature_names[j] = "F" + std::to_string(j + 1);
    d.values.assign(d.n * d.a, 0.0);
    d.endpoint.assign(d.n, 0.0);

    // 0 = discrete 0..2, 1 = continuous, 2 = constant
    std::vector<int> fkind(d.a);
    for (std::size_t j = 0; j < d.a; ++j) {
      const auto r = uniform_below(rng, 10);
      fkind[j] = r < 5 ? 0 : (r < 9 ? 1 : 2);
    }
    for (std::size_t i = 0; i < d.n; ++i) {
      for (std::size_t j = 0; j < d.a; ++j) {
        switch (fkind[j]) {
          case 0:
            d.cell(i, j) = static_cast<double>(uniform_below(rng, 3));
            break;
          case 1:
            d.cell(i, j) = uniform01(rng) * 10.0 - 5.0;
            break;
          default:
            d.cell(i, j) = 7.0;
        }
      }
    }

    const auto ekind = uniform_below(rng, 3);
    for (std::size_t i = 0; i < d.n; ++i) {
      if (ekind == 0) {
        d.endpoint[i] = static_cast<double>(uniform_below(rng, 2));
      } else if (ekind == 1) {
        d.endpoint[i] = static_cast<double>(uniform_below(rng, 3));
      } else {
        d.endpoint[i] = uniform01(rng) * 4.0 + 0.5;
      }
    }

    if (missing_freq > 0.0) {
      for (std::size_t i = 0; i < d.n; ++i) {
        for (std::size_t j = 0; j < d.a; ++j) {
          if (relief::bernoulli(rng, missing_freq)) d.cell(i, j) = relief::missing_cell();
        }
      }
    }

    // Validity: non-constant endpoint, every pair shares an observed feature.
    bool endpoint_varies = false;
    for (std::size_t i = 1; i < d.n; ++i) {
      if (d.endpoint[i] != d.endpoint[0]) endpoint_varies = true;
    }
    if (!endpoint_varies) continue;
    bool pairs_ok = true;
    for (std::size_t i = 0; i < d.n && pairs_ok; ++i) {
      for (std::size_t j = i + 1; j < d.n && pairs_ok; ++j) {
        bool shared = false;
        for (std::size_t f = 0; f < d.a; ++f) {
          if (!relief::is_missing(d.cell(i, f)) && !relief::is_missing(d.cell(j, f))) {
            shared = true;
            break;
          }
        }
        if (!shared) pairs_ok = false;
      }
    }
    if (!pairs_ok) continue;
    return d;
  }
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("reliefsel_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string dir() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

}  // namespace testutil
