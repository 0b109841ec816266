#include <cmath>

#include "doctest.h"
#include "leonet/network_state.hpp"
#include "leonet/rng.hpp"
#include "leonet/site_grid.hpp"

using namespace leonet;

TEST_CASE("site binning follows the half-open convention") {
  const SiteGrid grid(200.0, 2200.0, 10.0, 10.0);

  SUBCASE("direct binning") {
    const auto hit = grid.site_of(kEarthRadiusKm + 805.0, 95.0);
    REQUIRE(hit.placement == Placement::InDomain);
    const OrbitSite& site = grid.site(hit.site_id);
    CHECK(site.alt_lo_km == doctest::Approx(800.0));
    CHECK(site.alt_hi_km == doctest::Approx(810.0));
    CHECK(site.inc_lo_deg == doctest::Approx(90.0));
    CHECK(site.inc_hi_deg == doctest::Approx(100.0));
  }
  SUBCASE("below the domain floor is a labeled result") {
    CHECK(grid.site_of(kEarthRadiusKm + 199.0, 45.0).placement == Placement::Reentered);
    CHECK(grid.site_of(kEarthRadiusKm + 2300.0, 45.0).placement == Placement::Escaped);
  }
  SUBCASE("lower edges belong to the upper cell") {
    const auto hit = grid.site_of(kEarthRadiusKm + 800.0, 90.0);
    REQUIRE(hit.placement == Placement::InDomain);
    const OrbitSite& site = grid.site(hit.site_id);
    CHECK(site.alt_lo_km == doctest::Approx(800.0));
    CHECK(site.inc_lo_deg == doctest::Approx(90.0));
  }
  SUBCASE("topmost cells are closed") {
    const auto top = grid.site_of(kEarthRadiusKm + 2200.0, 180.0);
    REQUIRE(top.placement == Placement::InDomain);
    const OrbitSite& site = grid.site(top.site_id);
    CHECK(site.alt_hi_km == doctest::Approx(2200.0));
    CHECK(site.inc_hi_deg == doctest::Approx(180.0));
  }
}

TEST_CASE("node volume matches the spherical-segment formula") {
  const double alt_lo = 7000.0 - kEarthRadiusKm;
  OrbitSite site{0, alt_lo, alt_lo + 50.0, 0.0, 90.0};
  const double expected = 4.0 * kPi / 3.0 * (std::pow(7050.0, 3) - std::pow(7000.0, 3));
  CHECK(node_volume_km3(site) == doctest::Approx(expected).epsilon(1e-12));

  SUBCASE("sub-polar bins scale with sin(i_max)") {
    OrbitSite narrow = site;
    narrow.inc_hi_deg = 60.0;
    CHECK(node_volume_km3(narrow) ==
          doctest::Approx(expected * std::sin(60.0 * kDegToRad)).epsilon(1e-12));
  }
  SUBCASE("bins containing 90 deg use the full factor") {
    OrbitSite straddling = site;
    straddling.inc_lo_deg = 80.0;
    straddling.inc_hi_deg = 100.0;
    CHECK(node_volume_km3(straddling) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("mirrored inclination bins have equal volumes") {
    for (double x : {10.0, 30.0, 55.0, 80.0}) {
      OrbitSite lower = site;
      lower.inc_lo_deg = x;
      lower.inc_hi_deg = 90.0;
      OrbitSite upper = site;
      upper.inc_lo_deg = 90.0;
      upper.inc_hi_deg = 180.0 - x;
      CHECK(node_volume_km3(lower) == doctest::Approx(node_volume_km3(upper)).epsilon(1e-12));
    }
  }
  SUBCASE("volume grows with shell thickness") {
    OrbitSite thick = site;
    thick.alt_hi_km += 25.0;
    CHECK(node_volume_km3(thick) > node_volume_km3(site));
  }
}

TEST_CASE("binning partitions the domain") {
  auto grid = std::make_shared<SiteGrid>(200.0, 2200.0, 50.0, 60.0);
  Rng rng(7);
  std::vector<SpaceObject> population;
  for (int k = 0; k < 5000; ++k) {
    SpaceObject obj;
    obj.object_id = k + 1;
    obj.species = kAllSpecies[rng.uniform_index(4)];
    obj.a_km = kEarthRadiusKm + rng.uniform(200.0, 2200.0);
    obj.inc_deg = rng.uniform(0.0, 180.0);
    obj.mass_kg = 1.0;
    obj.radius_m = 0.5;
    obj.area_m2 = 1.0;
    population.push_back(obj);
  }
  NetworkState state = make_state(grid, population);
  CHECK(state.total_count() == 5000);
  CHECK(state.reentered_total == 0);
  CHECK(state.escaped_total == 0);

  long by_species = 0;
  for (Species s : kAllSpecies) by_species += state.count(s);
  CHECK(by_species == 5000);
}
