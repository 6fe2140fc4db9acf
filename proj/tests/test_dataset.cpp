#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "relief/dataset.hpp"
#include "relief/errors.hpp"
#include "relief/rng.hpp"
#include "testutil.hpp"

using namespace relief;

TEST_CASE("load_dataset reads the epistasis fixture") {
  std::istringstream in(fixtures::epistasis_toy_tsv());
  const Dataset d = load_dataset(in);
  REQUIRE(d.n == 8);
  REQUIRE(d.a == 3);
  REQUIRE(d.feature_names == std::vector<std::string>{"A1", "A2", "A3"});
  REQUIRE(d.cell(0, 0) == 1.0);
  REQUIRE(d.cell(1, 2) == 0.0);
  REQUIRE(d.endpoint[4] == 0.0);
}

TEST_CASE("load_dataset minimal two-row single-feature input") {
  std::istringstream in("F\tClass\n0.5\t1\n0.75\t0\n");
  const Dataset d = load_dataset(in);
  REQUIRE(d.n == 2);
  REQUIRE(d.a == 1);
}

TEST_CASE("load_dataset maps the missing token to a missing cell") {
  std::istringstream in("F\tG\tClass\n1\tN/A\t0\n2\t3\t1\n");
  const Dataset d = load_dataset(in);
  REQUIRE(is_missing(d.cell(0, 1)));
  REQUIRE_FALSE(is_missing(d.cell(1, 1)));
}

TEST_CASE("load_dataset auto-detects comma delimiter and accepts override") {
  std::istringstream in("F,G,Class\n1,2,0\n3,4,1\n");
  const Dataset d = load_dataset(in);
  REQUIRE(d.a == 2);
  REQUIRE(d.cell(1, 1) == 4.0);

  LoadOptions tab;
  tab.delimiter = '\t';
  std::istringstream in2("F,G,Class\n1,2,0\n");
  REQUIRE_THROWS_AS(load_dataset(in2, tab), ConfigError);  // one tab-less column
}

TEST_CASE("load_dataset errors") {
  SECTION("malformed row length reports the line number") {
    std::istringstream in("F\tG\tClass\n1\t2\t0\n1\t2\n");
    try {
      load_dataset(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SECTION("absent endpoint column") {
    std::istringstream in("F\tG\n1\t2\n");
    REQUIRE_THROWS_AS(load_dataset(in), ConfigError);
  }
  SECTION("missing value in the endpoint") {
    std::istringstream in("F\tClass\n1\t0\n2\tN/A\n");
    REQUIRE_THROWS_AS(load_dataset(in), DataError);
  }
  SECTION("non-numeric cell") {
    std::istringstream in("F\tClass\n1\t0\nbogus\t1\n");
    REQUIRE_THROWS_AS(load_dataset(in), ParseError);
  }
}

TEST_CASE("load_dataset interns categorical endpoint labels in sorted order") {
  std::istringstream in("F\tClass\n1\tcase\n2\tcontrol\n3\tcase\n");
  const Dataset d = load_dataset(in);
  REQUIRE(d.endpoint_label_names == std::vector<std::string>{"case", "control"});
  REQUIRE(d.endpoint == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("profile classifies the epistasis fixture") {
  const Dataset d = fixtures::epistasis_toy();
  const DataSummary s = profile(d);
  for (const FeatureKind& k : s.feature_kinds) {
    REQUIRE(k.type == FeatureType::Discrete);
    REQUIRE_FALSE(k.constant);
  }
  REQUIRE(s.endpoint_kind.type == EndpointType::Binary);
  REQUIRE(s.endpoint_kind.class_counts == std::vector<std::size_t>{4, 4});
  REQUIRE_FALSE(s.has_missing);
}

TEST_CASE("profile endpoint cutoff rule and sigma") {
  Dataset d;
  d.n = 4;
  d.a = 1;
  d.feature_names = {"F"};
  d.values = {0, 0, 1, 1};
  d.endpoint = {0, 1, 2, 3};

  SECTION("cutoff below the distinct count forces a continuous endpoint") {
    const DataSummary s = profile(d, 3);
    REQUIRE(s.endpoint_kind.type == EndpointType::Continuous);
    REQUIRE(s.endpoint_kind.sigma == Catch::Approx(std::sqrt(1.25)).epsilon(1e-12));
  }
  SECTION("default cutoff keeps it discrete") {
    const DataSummary s = profile(d);
    REQUIRE(s.endpoint_kind.type == EndpointType::MultiClass);
    REQUIRE(s.endpoint_kind.num_classes() == 4);
  }
}

TEST_CASE("profile: many distinct reals are continuous") {
  Dataset d;
  d.n = 12;
  d.a = 1;
  d.feature_names = {"F"};
  for (int i = 0; i < 12; ++i) {
    d.values.push_back(0.5 * i);
    d.endpoint.push_back(i % 2);
  }
  const DataSummary s = profile(d, 10);
  REQUIRE(s.feature_kinds[0].type == FeatureType::Continuous);
  REQUIRE(s.feature_kinds[0].observed_min == 0.0);
  REQUIRE(s.feature_kinds[0].observed_max == 5.5);
}

TEST_CASE("profile: constant feature is flagged, constant endpoint is an error") {
  Dataset d;
  d.n = 3;
  d.a = 2;
  d.feature_names = {"F", "G"};
  d.values = {5.5, 0, 5.5, 1, 5.5, 2};
  d.endpoint = {0, 1, 0};
  const DataSummary s = profile(d);
  REQUIRE(s.feature_kinds[0].constant);
  REQUIRE(s.feature_kinds[0].type == FeatureType::Discrete);

  d.endpoint = {1, 1, 1};
  REQUIRE_THROWS_AS(profile(d), DataError);
}

TEST_CASE("normalize rescales continuous features and endpoint") {
  Dataset d;
  d.n = 3;
  d.a = 1;
  d.feature_names = {"F"};
  d.values = {10.5, 20.5, 30.5};
  d.endpoint = {0, 50, 100};
  DataSummary s = profile(d, 2);
  REQUIRE(s.feature_kinds[0].type == FeatureType::Continuous);
  REQUIRE(s.endpoint_kind.type == EndpointType::Continuous);

  const Dataset norm = normalize(d, s);
  REQUIRE(norm.values == std::vector<double>{0.0, 0.5, 1.0});
  REQUIRE(norm.endpoint == std::vector<double>{0.0, 0.5, 1.0});
  // sigma recomputed on the rescaled endpoint
  const double expect = std::sqrt((0.25 + 0.0 + 0.25) / 3.0);
  REQUIRE(s.endpoint_kind.sigma == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("normalize leaves an all-discrete dataset untouched") {
  const Dataset d = fixtures::epistasis_toy();
  DataSummary s = profile(d);
  const Dataset norm = normalize(d, s);
  REQUIRE(norm.values == d.values);
  REQUIRE(norm.endpoint == d.endpoint);
}

TEST_CASE("normalize is exactly idempotent and bounds continuous cells") {
  Rng rng(20240809);
  for (int rep = 0; rep < 25; ++rep) {
    const Dataset raw = testutil::random_dataset(rng, rep % 2 ? 0.15 : 0.0);
    DataSummary s = profile(raw);
    const Dataset n1 = normalize(raw, s);
    const Dataset n2 = normalize(n1, s);
    REQUIRE(n2.values == n1.values);
    REQUIRE(n2.endpoint == n1.endpoint);
    for (std::size_t j = 0; j < n1.a; ++j) {
      if (s.feature_kinds[j].type != FeatureType::Continuous) continue;
      for (std::size_t i = 0; i < n1.n; ++i) {
        const double v = n1.cell(i, j);
        if (is_missing(v)) continue;
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
      }
    }
  }
}

TEST_CASE("profile is deterministic and classification ignores row order") {
  Rng rng(99);
  for (int rep = 0; rep < 10; ++rep) {
    const Dataset d = testutil::random_dataset(rng, 0.1);
    const DataSummary s1 = profile(d);
    const DataSummary s2 = profile(d);
    REQUIRE(s1.has_missing == s2.has_missing);
    for (std::size_t j = 0; j < d.a; ++j) {
      REQUIRE(s1.feature_kinds[j].type == s2.feature_kinds[j].type);
    }

    // Reverse the rows: kinds must not change.
    Dataset rev = d;
    for (std::size_t i = 0; i < d.n; ++i) {
      for (std::size_t j = 0; j < d.a; ++j) rev.cell(i, j) = d.cell(d.n - 1 - i, j);
      rev.endpoint[i] = d.endpoint[d.n - 1 - i];
    }
    const DataSummary sr = profile(rev);
    REQUIRE(sr.endpoint_kind.type == s1.endpoint_kind.type);
    for (std::size_t j = 0; j < d.a; ++j) {
      REQUIRE(sr.feature_kinds[j].type == s1.feature_kinds[j].type);
      REQUIRE(sr.feature_kinds[j].constant == s1.feature_kinds[j].constant);
    }
  }
}

TEST_CASE("write_dataset round-trips through load_dataset") {
  Rng rng(4242);
  const Dataset d = testutil::random_dataset(rng, 0.2);
  std::ostringstream out;
  write_dataset(out, d);
  std::istringstream in(out.str());
  const Dataset back = load_dataset(in);
  REQUIRE(back.n == d.n);
  REQUIRE(back.a == d.a);
  for (std::size_t i = 0; i < d.n * d.a; ++i) {
    if (is_missing(d.values[i])) {
      REQUIRE(is_missing(back.values[i]));
    } else {
      REQUIRE(back.values[i] == d.values[i]);
    }
  }
  REQUIRE(back.endpoint == d.endpoint);
}
