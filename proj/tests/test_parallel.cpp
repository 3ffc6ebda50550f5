#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include "support.hpp"
#include "wavedisk/parallel.hpp"

using namespace wavedisk;
using namespace testing_support;

TEST_CASE("sweep: OpenMP and serial runs agree exactly") {
  omp_set_num_threads(4);
  const std::vector<double> s{0.5, 1.0}, c{1.5, 2.0, 3.0};
  const auto a = sweep(s, c), b = sweep_serial(s, c);
  REQUIRE(a.size() == 6);
  REQUIRE(b.size() == 6);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].s == s[k / 3]);
    CHECK(a[k].c == c[k % 3]);
    CHECK(a[k].s == b[k].s);
    CHECK(a[k].c == b[k].c);
    CHECK(a[k].c_shooting == b[k].c_shooting);
    CHECK(a[k].gap == b[k].gap);
    REQUIRE(a[k].families.size() == b[k].families.size());
    for (std::size_t f = 0; f < a[k].families.size(); ++f) {
      CHECK(a[k].families[f].name == b[k].families[f].name);
      CHECK(a[k].families[f].report.orbit_class == b[k].families[f].report.orbit_class);
      CHECK(a[k].families[f].report.phi_zero_crossings == b[k].families[f].report.phi_zero_crossings);
    }
  }
  // Regime flips at the minimal speed 2 / sqrt(s).
  CHECK(a[3].regime.tag == RegimeTag::subcritical);
  CHECK(a[4].regime.tag == RegimeTag::critical);
  CHECK(a[5].regime.tag == RegimeTag::supercritical);
  CHECK(a[5].count(OrbitClass::positive_monotone_to_E0) == 2);
  CHECK(a[4].family("E3") != nullptr);
  CHECK(a[3].family("E1") == nullptr);
}

TEST_CASE("oracle sweep: OpenMP and serial runs agree exactly") {
  const std::vector<double> c{1.0, 1.8, 1.95, 2.05, 2.5, 4.0};
  const auto a = oracle_sweep(1.0, c), b = oracle_sweep_serial(1.0, c);
  REQUIRE(a.size() == c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK(a[k].at_or_above == b[k].at_or_above);
    CHECK(a[k].elapsed == b[k].elapsed);
    CHECK(a[k].steps == b[k].steps);
  }
}

TEST_CASE("portrait fan: OpenMP and serial runs agree exactly") {
  const PlanarSystem d = desingularized(1.0, 3.0);
  auto seeds = ring_seeds(6, 5.0);
  const auto extra = manifold_seeds(1.0, 3.0);
  seeds.insert(seeds.end(), extra.begin(), extra.end());
  DiskOptions o;
  o.horizon = 100;
  o.max_frames = 200;
  const auto a = portrait_fan(d, seeds, o), b = portrait_fan_serial(d, seeds, o);
  REQUIRE(a.size() == seeds.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    REQUIRE(a[k].frames.size() == b[k].frames.size());
    for (std::size_t f = 0; f < a[k].frames.size(); ++f) {
      CHECK(a[k].frames[f].chart == b[k].frames[f].chart);
      CHECK(a[k].frames[f].p == b[k].frames[f].p);
    }
  }
}

TEST_CASE("seed sets") {
  CHECK(ring_seeds(4, 2.0).size() == 8);
  CHECK_THROWS_AS(ring_seeds(0, 2.0), ModelError);
  const auto m = manifold_seeds(1.0, 1.0);
  int cm = 0;
  for (const auto& f : m) cm += f.tag == "center_manifold";
  CHECK(cm == 2);
}
