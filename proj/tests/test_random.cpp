#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gnowee/random.hpp"

using namespace gnowee;

TEST_CASE("stream is reproducible for a fixed seed") {
  Mt19937Stream a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.uniform01() == b.uniform01());
  }
  Mt19937Stream c(42), d(42);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(c.normal() == d.normal());
  }
}

TEST_CASE("derived streams differ from the base and from each other") {
  Mt19937Stream base(7);
  auto s1 = base.split(0);
  auto s2 = base.split(1);
  REQUIRE(s1.seed() != s2.seed());
  REQUIRE(s1.uniform01() != s2.uniform01());
  REQUIRE(Mt19937Stream::derive_seed(7, 3) == Mt19937Stream::derive_seed(7, 3));
  REQUIRE(Mt19937Stream::derive_seed(7, 3) != Mt19937Stream::derive_seed(8, 3));
}

TEST_CASE("uniform01 stays in [0,1) and index stays in range") {
  Mt19937Stream rng(1);
  int bad = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    if (!(u >= 0.0 && u < 1.0)) ++bad;
  }
  for (std::size_t n : {1, 2, 3, 17}) {
    for (int i = 0; i < 1000; ++i) {
      if (rng.index(n) >= n) ++bad;
    }
  }
  REQUIRE(bad == 0);
}

TEST_CASE("sample_without_replacement yields k distinct in-range indices") {
  Mt19937Stream rng(3);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.index(20);
    const std::size_t k = rng.index(n + 1);
    const auto s = rng.sample_without_replacement(k, n);
    REQUIRE(s.size() == k);
    std::set<std::size_t> uniq(s.begin(), s.end());
    REQUIRE(uniq.size() == k);
    for (auto v : s) REQUIRE(v < n);
  }
}

TEST_CASE("normal draws have roughly standard moments") {
  Mt19937Stream rng(11);
  const int n = 200000;
  double s = 0, ss = 0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    s += v;
    ss += v * v;
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  REQUIRE(std::fabs(mean) < 0.01);
  REQUIRE(std::fabs(var - 1.0) < 0.02);
}
