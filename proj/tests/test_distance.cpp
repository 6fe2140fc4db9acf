#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fixtures.hpp"
#include "relief/distance.hpp"
#include "relief/errors.hpp"
#include "relief/rng.hpp"
#include "testutil.hpp"

using namespace relief;

namespace {

Prepared prep(const Dataset& d) { return prepare(d); }

}  // namespace

TEST_CASE("diff on discrete and continuous values") {
  Dataset d;
  d.n = 2;
  d.a = 2;
  d.feature_names = {"D", "C"};
  d.values = {1, 0.2, 1, 0.7};
  d.endpoint = {0, 1};
  DataSummary s;
  s.feature_kinds.resize(2);
  s.feature_kinds[0] = {FeatureType::Discrete, 0, 0, false};
  s.feature_kinds[1] = {FeatureType::Continuous, 0.0, 1.0, false};

  REQUIRE(diff(0, 0, 1, d, s) == 0.0);
  d.cell(1, 0) = 0;
  REQUIRE(diff(0, 0, 1, d, s) == 1.0);
  REQUIRE(diff(1, 0, 1, d, s) == Catch::Approx(0.5).epsilon(1e-15));

  d.cell(0, 1) = missing_cell();
  REQUIRE(is_skip(diff(1, 0, 1, d, s)));
}

TEST_CASE("pairwise distances on the epistasis fixture") {
  const Prepared p = prep(fixtures::epistasis_toy());
  const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
  REQUIRE(dm.at(0, 1) == 1.0);  // nearest hit pair differs only at A3
  REQUIRE(dm.at(0, 3) == 3.0);  // farthest hit differs everywhere
  REQUIRE(dm.at(1, 0) == 1.0);
  REQUIRE(dm.valid_at(0, 1) == 3);
}

TEST_CASE("duplicated instances are at distance zero") {
  Dataset d;
  d.n = 2;
  d.a = 3;
  d.feature_names = {"A", "B", "C"};
  d.values = {1, 2, 0, 1, 2, 0};
  d.endpoint = {0, 1};
  const Prepared p = prep(d);
  const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
  REQUIRE(dm.at(0, 1) == 0.0);
}

TEST_CASE("missing-data rescale: one skipped feature of three") {
  Dataset d;
  d.n = 2;
  d.a = 3;
  d.feature_names = {"A", "B", "C"};
  // Raw diff sum over observed features is 1; rescaled by 3/2.
  d.values = {1, 0, missing_cell(), 0, 0, 1};
  d.endpoint = {0, 1};
  const Prepared p = prep(d);
  const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
  REQUIRE(dm.at(0, 1) == Catch::Approx(1.5).epsilon(1e-15));
  REQUIRE(dm.valid_at(0, 1) == 2);
}

TEST_CASE("a pair with no shared observed features is a data error") {
  Dataset d;
  d.n = 2;
  d.a = 2;
  d.feature_names = {"A", "B"};
  d.values = {1, missing_cell(), missing_cell(), 1};
  d.endpoint = {0, 1};
  const Prepared p = prep(d);
  try {
    pairwise_distances(p.data, p.summary);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    REQUIRE(msg.find("0") != std::string::npos);
    REQUIRE(msg.find("1") != std::string::npos);
  }
}

TEST_CASE("complete data equals the plain Manhattan sum") {
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const Dataset raw = testutil::random_dataset(rng, 0.0);
    const Prepared p = prep(raw);
    const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
    for (std::size_t i = 0; i < p.data.n; ++i) {
      for (std::size_t j = i + 1; j < p.data.n; ++j) {
        double manual = 0.0;
        for (std::size_t f = 0; f < p.data.a; ++f) {
          manual += diff(f, i, j, p.data, p.summary);
        }
        REQUIRE(dm.at(i, j) == manual);
        REQUIRE(dm.valid_at(i, j) == p.data.a);
      }
    }
  }
}

TEST_CASE("diff is symmetric and bounded") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Dataset raw = testutil::random_dataset(rng, 0.2);
    const Prepared p = prep(raw);
    for (std::size_t i = 0; i < p.data.n; ++i) {
      for (std::size_t j = 0; j < p.data.n; ++j) {
        for (std::size_t f = 0; f < p.data.a; ++f) {
          const double dij = diff(f, i, j, p.data, p.summary);
          const double dji = diff(f, j, i, p.data, p.summary);
          if (is_skip(dij)) {
            REQUIRE(is_skip(dji));
            continue;
          }
          REQUIRE(dij == dji);
          REQUIRE(dij >= 0.0);
          REQUIRE(dij <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("parallel and serial distance computation agree bitwise") {
  Rng rng(13);
  Dataset big;
  big.n = 150;
  big.a = 8;
  big.feature_names.resize(8, "F");
  for (std::size_t i = 0; i < big.n; ++i) {
    for (std::size_t j = 0; j < big.a; ++j) {
      big.values.push_back(j % 2 == 0 ? static_cast<double>(uniform_below(rng, 3))
                                      : uniform01(rng));
    }
    big.endpoint.push_back(static_cast<double>(uniform_below(rng, 2)));
  }
  const Prepared p = prep(big);
  const DistanceMatrix serial = pairwise_distances(p.data, p.summary, 1);
  const DistanceMatrix threaded = pairwise_distances(p.data, p.summary, 4);
  REQUIRE(serial.d == threaded.d);
  REQUIRE(serial.valid == threaded.valid);
}

TEST_CASE("target_stats") {
  SECTION("two instances at distance two") {
    Dataset d;
    d.n = 2;
    d.a = 2;
    d.feature_names = {"A", "B"};
    d.values = {0, 0, 1, 1};
    d.endpoint = {0, 1};
    const Prepared p = prep(d);
    const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
    const TargetStats st = target_stats(dm, 0);
    REQUIRE(st.mean == 2.0);
    REQUIRE(st.stddev == 0.0);
  }
  SECTION("epistasis fixture target R1 against brute enumeration") {
    const Prepared p = prep(fixtures::epistasis_toy());
    const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
    double sum = 0.0;
    for (std::size_t j = 1; j < 8; ++j) sum += dm.at(0, j);
    const TargetStats st = target_stats(dm, 0);
    REQUIRE(st.mean == Catch::Approx(sum / 7.0).epsilon(1e-15));
    REQUIRE(st.mean == Catch::Approx(12.0 / 7.0).epsilon(1e-15));
  }
  SECTION("all-equal distances give zero deviation") {
    Dataset d;
    d.n = 3;
    d.a = 3;
    d.feature_names = {"A", "B", "C"};
    // Every pair differs at exactly two features.
    d.values = {0, 0, 0, 1, 1, 0, 1, 0, 1};
    d.endpoint = {0, 1, 0};
    const Prepared p = prep(d);
    const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
    const TargetStats st = target_stats(dm, 1);
    REQUIRE(st.stddev == 0.0);
  }
}

TEST_CASE("global_threshold") {
  SECTION("hand-built condensed values") {
    DistanceMatrix dm;
    dm.n = 3;
    dm.d = {1.0, 2.0, 3.0};
    dm.valid = {1, 1, 1};
    REQUIRE(global_threshold(dm) == 2.0);
  }
  SECTION("epistasis fixture equals the brute mean of all 28 pairs") {
    const Prepared p = prep(fixtures::epistasis_toy());
    const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = i + 1; j < 8; ++j) {
        sum += dm.at(i, j);
        ++count;
      }
    }
    REQUIRE(count == 28);
    REQUIRE(global_threshold(dm) == Catch::Approx(sum / 28.0).epsilon(1e-15));
  }
  SECTION("identical rows only") {
    Dataset d;
    d.n = 3;
    d.a = 1;
    d.feature_names = {"A"};
    d.values = {1, 1, 1};
    d.endpoint = {0, 1, 0};
    const Prepared p = prep(d);
    REQUIRE(global_threshold(pairwise_distances(p.data, p.summary)) == 0.0);
  }
}

TEST_CASE("distance cache round-trips bit-exactly and validates its key") {
  testutil::TempDir tmp;
  const Prepared p = prep(fixtures::epistasis_toy());
  const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
  const std::uint64_t hash = dataset_content_hash(p.data);
  const std::string path = tmp.file("cache.dmat");

  REQUIRE(save_distance_cache(path, dm, p.data.a, hash));
  const auto loaded = load_distance_cache(path, p.data.n, p.data.a, hash);
  REQUIRE(loaded.has_value());
  REQUIRE(loaded->d == dm.d);
  REQUIRE(loaded->valid == dm.valid);

  REQUIRE_FALSE(load_distance_cache(path, p.data.n, p.data.a, hash + 1).has_value());
  REQUIRE_FALSE(load_distance_cache(path, p.data.n + 1, p.data.a, hash).has_value());
}

TEST_CASE("distance cache refuses incomplete data") {
  Dataset d;
  d.n = 3;
  d.a = 2;
  d.feature_names = {"A", "B"};
  d.values = {1, 0, missing_cell(), 1, 0, 0};
  d.endpoint = {0, 1, 0};
  const Prepared p = prep(d);
  const DistanceMatrix dm = pairwise_distances(p.data, p.summary);
  testutil::TempDir tmp;
  REQUIRE_FALSE(save_distance_cache(tmp.file("c.dmat"), dm, p.data.a, 1));
}

TEST_CASE("content hash changes with any cell and is missing-stable") {
  const Dataset d = fixtures::epistasis_toy();
  Dataset d2 = d;
  d2.cell(3, 1) = 9.0;
  REQUIRE(dataset_content_hash(d) != dataset_content_hash(d2));

  Dataset m1 = d;
  m1.cell(0, 0) = missing_cell();
  Dataset m2 = d;
  m2.cell(0, 0) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE(dataset_content_hash(m1) == dataset_content_hash(m2));
}
