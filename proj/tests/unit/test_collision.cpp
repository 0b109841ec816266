#include <cmath>
#include <map>

#include "doctest.h"
#include "leonet/collision.hpp"
#include "oracles.hpp"

using namespace leonet;

namespace {

SpaceObject ball(double radius_m, double a_km = kEarthRadiusKm + 805.0, double inc_deg = 5.0,
                 double mass_kg = 100.0) {
  SpaceObject obj;
  obj.species = Species::Fragment;
  obj.a_km = a_km;
  obj.inc_deg = inc_deg;
  obj.mass_kg = mass_kg;
  obj.radius_m = radius_m;
  obj.area_m2 = kPi * radius_m * radius_m;
  return obj;
}

Node make_node(std::vector<SpaceObject> objs, int site_id = 0,
               Species species = Species::Fragment) {
  Node node;
  node.species = species;
  node.site_id = site_id;
  node.objects = std::move(objs);
  return node;
}

}  // namespace

TEST_CASE("self cross-section closed form") {
  SUBCASE("two unit-diameter objects give pi m^2") {
    const Node node = make_node({ball(0.5), ball(0.5)});
    CHECK(avg_cross_section_self_km2(node) == doctest::Approx(kPi * kM2ToKm2).epsilon(1e-12));
  }
  SUBCASE("three objects match the enumerated pair average") {
    const Node node = make_node({ball(0.5), ball(0.5), ball(1.0)});
    CHECK(avg_cross_section_self_km2(node) ==
          doctest::Approx(11.0 * kPi / 6.0 * kM2ToKm2).epsilon(1e-12));
  }
  SUBCASE("identical objects collapse to pi c^2") {
    const Node node = make_node({ball(0.7), ball(0.7), ball(0.7), ball(0.7)});
    CHECK(avg_cross_section_self_km2(node) ==
          doctest::Approx(kPi * 1.4 * 1.4 * kM2ToKm2).epsilon(1e-12));
  }
  SUBCASE("single object has no pairs") {
    const Node node = make_node({ball(0.5)});
    CHECK_THROWS(avg_cross_section_self_km2(node));
  }
}

TEST_CASE("cross cross-section closed form") {
  SUBCASE("one pair of 2 m objects gives 4 pi") {
    const Node a = make_node({ball(1.0)});
    const Node b = make_node({ball(1.0)}, 1);
    CHECK(avg_cross_section_cross_km2(a, b) ==
          doctest::Approx(4.0 * kPi * kM2ToKm2).epsilon(1e-12));
  }
  SUBCASE("mixed sizes match the enumerated mean") {
    // Diameters {1,3} against {2}: mean of pi/4*(1+2)^2 and pi/4*(3+2)^2.
    const Node a = make_node({ball(0.5), ball(1.5)});
    const Node b = make_node({ball(1.0)}, 1);
    CHECK(avg_cross_section_cross_km2(a, b) ==
          doctest::Approx(17.0 * kPi / 4.0 * kM2ToKm2).epsilon(1e-12));
    CHECK(avg_cross_section_cross_km2(a, b) ==
          doctest::Approx(oracle::brute_force_sigma_cross_km2(a.objects, b.objects))
              .epsilon(1e-12));
  }
}

TEST_CASE("cross sections equal the brute-force pair average to machine precision") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<SpaceObject> a_objs, b_objs;
    const int na = 2 + static_cast<int>(rng.uniform_index(199));
    const int nb = 1 + static_cast<int>(rng.uniform_index(200));
    for (int k = 0; k < na; ++k) a_objs.push_back(ball(rng.uniform(0.05, 3.0)));
    for (int k = 0; k < nb; ++k) b_objs.push_back(ball(rng.uniform(0.05, 3.0)));
    const Node a = make_node(a_objs);
    const Node b = make_node(b_objs, 1);
    CHECK(avg_cross_section_self_km2(a) ==
          doctest::Approx(oracle::brute_force_sigma_self_km2(a_objs)).epsilon(1e-12));
    CHECK(avg_cross_section_cross_km2(a, b) ==
          doctest::Approx(oracle::brute_force_sigma_cross_km2(a_objs, b_objs)).epsilon(1e-12));
  }
}

TEST_CASE("relative velocity approximation") {
  const SiteGrid grid(200.0, 2200.0, 10.0, 10.0);

  SUBCASE("coplanar equatorial circular orbits close at zero speed") {
    const int site = grid.site_of(kEarthRadiusKm + 805.0, 0.0).site_id;
    const Node a = make_node({ball(0.5, kEarthRadiusKm + 805.0, 0.0)}, site);
    const Node b = make_node({ball(0.5, kEarthRadiusKm + 805.0, 0.0)}, site);
    CHECK(mean_relative_velocity_km_s(a, b, grid, kMuKm3PerS2) == doctest::Approx(0.0));
  }
  SUBCASE("triangle bounds hold for random node pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const double inc_a = rng.uniform(0.0, 180.0);
      const double inc_b = rng.uniform(0.0, 180.0);
      std::vector<SpaceObject> a_objs, b_objs;
      for (int k = 0; k < 20; ++k) {
        a_objs.push_back(ball(0.5, kEarthRadiusKm + rng.uniform(800.0, 810.0), inc_a));
        b_objs.push_back(ball(0.5, kEarthRadiusKm + rng.uniform(800.0, 810.0), inc_b));
      }
      const int site_a = grid.site_of(a_objs[0].a_km, inc_a).site_id;
      const int site_b = grid.site_of(b_objs[0].a_km, inc_b).site_id;
      const Node a = make_node(a_objs, site_a);
      const Node b = make_node(b_objs, site_b);
      const NodeKinematics ka = summarize(a), kb = summarize(b);
      const double r_mid = grid.shell_mid_radius_km(grid.shell_of(site_a));
      const double vi = node_speed_km_s(ka, r_mid, kMuKm3PerS2);
      const double vj = node_speed_km_s(kb, grid.shell_mid_radius_km(grid.shell_of(site_b)),
                                        kMuKm3PerS2);
      const double dv = mean_relative_velocity_km_s(a, b, grid, kMuKm3PerS2);
      CHECK(dv <= vi + vj + 1e-12);
      CHECK(dv >= std::fabs(vi - vj) - 1e-12);
    }
  }
  SUBCASE("empty nodes have no defined closing speed") {
    const Node a = make_node({ball(0.5)});
    const Node empty = make_node({}, 1);
    CHECK_THROWS(mean_relative_velocity_km_s(a, empty, grid, kMuKm3PerS2));
  }
}

TEST_CASE("approximated closing speed stays within 10% of the pairwise oracle") {
  // 10-degree bins in the 800-810 km shell, eccentricities up to 0.1.
  const SiteGrid grid(200.0, 2200.0, 10.0, 10.0);
  Rng rng(47);
  const double r_mid = kEarthRadiusKm + 805.0;
  auto sample_node = [&](double inc_lo, double inc_hi, int n) {
    std::pair<std::vector<SpaceObject>, std::vector<oracle::SampledOrbit>> out;
    for (int k = 0; k < n; ++k) {
      const double inc = rng.uniform(inc_lo, inc_hi);
      const double a = kEarthRadiusKm + rng.uniform(800.0, 810.0);
      SpaceObject obj = ball(0.5, a, inc);
      obj.ecc = rng.uniform(0.0, 0.1);
      out.first.push_back(obj);
      out.second.push_back({a, inc * kDegToRad, rng.uniform(0.0, 2.0 * kPi)});
    }
    return out;
  };
  const double pairs[3][4] = {{0, 10, 0, 10}, {0, 10, 170, 180}, {60, 70, 110, 120}};
  for (const auto& bins : pairs) {
    const auto [objs_i, orbits_i] = sample_node(bins[0], bins[1], 200);
    const auto [objs_j, orbits_j] = sample_node(bins[2], bins[3], 200);
    const int site_i = grid.site_of(r_mid, 0.5 * (bins[0] + bins[1])).site_id;
    const int site_j = grid.site_of(r_mid, 0.5 * (bins[2] + bins[3])).site_id;
    const Node node_i = make_node(objs_i, site_i);
    const Node node_j = make_node(objs_j, site_j);
    const double approx = mean_relative_velocity_km_s(node_i, node_j, grid, kMuKm3PerS2);
    const double exact = oracle::exact_pairwise_dv_km_s(orbits_i, orbits_j, r_mid, kMuKm3PerS2);
    CHECK(std::fabs(approx - exact) / exact < 0.10);
  }
}

TEST_CASE("mean collision rate") {
  const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
  const int site = grid.site_of(kEarthRadiusKm + 825.0, 30.0).site_id;

  SUBCASE("cross rate equals the assembled product") {
    const Node a = make_node({ball(0.5, kEarthRadiusKm + 820.0, 10.0)}, site, Species::Payload);
    const Node b = make_node({ball(1.0, kEarthRadiusKm + 830.0, 50.0)}, site, Species::Fragment);
    const double dv = mean_relative_velocity_km_s(a, b, grid, kMuKm3PerS2);
    const double sigma = avg_cross_section_cross_km2(a, b);
    const double expected = 1.0 * 1.0 * dv * sigma / grid.volume_km3(site) * kSecondsPerDay;
    CHECK(mean_collision_rate_per_day(a, b, grid, kMuKm3PerS2) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("singleton self pairs have zero rate") {
    const Node a = make_node({ball(0.5)}, site);
    CHECK(mean_collision_rate_per_day(a, a, grid, kMuKm3PerS2) == 0.0);
  }
  SUBCASE("rate is linear in the cross pair counts") {
    std::vector<SpaceObject> one{ball(0.5, kEarthRadiusKm + 820.0, 10.0)};
    std::vector<SpaceObject> two{ball(0.5, kEarthRadiusKm + 820.0, 10.0),
                                 ball(0.5, kEarthRadiusKm + 820.0, 10.0)};
    const Node b = make_node({ball(1.0, kEarthRadiusKm + 830.0, 50.0)}, site, Species::Payload);
    const double tau_one = mean_collision_rate_per_day(make_node(one, site), b, grid, kMuKm3PerS2);
    const double tau_two = mean_collision_rate_per_day(make_node(two, site), b, grid, kMuKm3PerS2);
    CHECK(tau_two == doctest::Approx(2.0 * tau_one).epsilon(1e-12));
  }
}

TEST_CASE("jump sampling") {
  Rng rng(55);
  SUBCASE("zero rate never fires") {
    for (int k = 0; k < 100; ++k) {
      CHECK(sample_jump(0.0, 30.0, JumpModifier::Plain, 0.9999, 5.3, rng) == 0);
    }
  }
  SUBCASE("perfect avoidance suppresses CAM jumps") {
    for (int k = 0; k < 100; ++k) {
      CHECK(sample_jump(10.0, 30.0, JumpModifier::Cam, 1.0, 5.3, rng) == 0);
      CHECK(sample_jump(10.0, 30.0, JumpModifier::Cam2, 1.0, 5.3, rng) == 0);
    }
  }
  SUBCASE("plain jump mean matches rate*dt within 3 sigma over 1e6 draws") {
    const int n = 1000000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      sum += static_cast<double>(sample_jump(0.2, 10.0, JumpModifier::Plain, 0.0, 0.0, rng));
    }
    CHECK(std::fabs(sum / n - 2.0) < 3.0 * std::sqrt(2.0 / n));
  }
  SUBCASE("negative rate is a contract violation") {
    CHECK_THROWS(sample_jump(-1.0, 30.0, JumpModifier::Plain, 0.0, 0.0, rng));
  }
}

TEST_CASE("pair selection matrix") {
  const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
  const int site = grid.site_of(kEarthRadiusKm + 825.0, 30.0).site_id;

  SUBCASE("degenerate single bin reproduces 1 - exp(-tau dt)") {
    const Node a = make_node({ball(0.3, kEarthRadiusKm + 820.0, 10.0),
                              ball(0.6, kEarthRadiusKm + 830.0, 20.0)},
                             site);
    const Node b = make_node({ball(1.0, kEarthRadiusKm + 830.0, 50.0)}, site, Species::Payload);
    const double tau = mean_collision_rate_per_day(a, b, grid, kMuKm3PerS2);
    const auto matrix = build_pair_selection_matrix(a, b, 1, 30.0, grid, kMuKm3PerS2);
    CHECK(matrix.at(0, 0) == doctest::Approx(1.0 - std::exp(-tau * 30.0)).epsilon(1e-12));

    const double tau_self = mean_collision_rate_per_day(a, a, grid, kMuKm3PerS2);
    const auto self_matrix = build_pair_selection_matrix(a, a, 1, 30.0, grid, kMuKm3PerS2);
    CHECK(self_matrix.at(0, 0) ==
          doctest::Approx(1.0 - std::exp(-tau_self * 30.0)).epsilon(1e-12));
  }

  SUBCASE("entries stay in [0,1] and empty bins stay zero") {
    Rng rng(77);
    std::vector<SpaceObject> objs;
    for (int k = 0; k < 200; ++k) {
      objs.push_back(ball(rng.uniform(0.1, 3.0), kEarthRadiusKm + rng.uniform(800.0, 850.0),
                          rng.uniform(0.0, 60.0)));
    }
    // Push one outlier radius so interior bins are guaranteed empty.
    objs.push_back(ball(30.0, kEarthRadiusKm + 820.0, 30.0));
    const Node a = make_node(objs, site);
    const auto matrix = build_pair_selection_matrix(a, a, 10, 30.0, grid, kMuKm3PerS2);
    bool saw_empty_row = false;
    for (int k = 0; k < 10; ++k) {
      bool bin_empty = matrix.members_i[static_cast<std::size_t>(k)].empty();
      if (bin_empty) saw_empty_row = true;
      for (int l = 0; l < 10; ++l) {
        CHECK(matrix.at(k, l) >= 0.0);
        CHECK(matrix.at(k, l) <= 1.0);
        if (bin_empty) CHECK(matrix.at(k, l) == 0.0);
      }
    }
    CHECK(saw_empty_row);
  }

  SUBCASE("one object per bin converges to the per-pair distribution") {
    // Radii chosen so every object lands in its own bin.
    std::vector<SpaceObject> a_objs, b_objs;
    for (int k = 0; k < 5; ++k) {
      a_objs.push_back(ball(0.1 + 0.1 * k, kEarthRadiusKm + 820.0, 10.0));
      b_objs.push_back(ball(0.15 + 0.1 * k, kEarthRadiusKm + 830.0, 50.0));
    }
    const Node a = make_node(a_objs, site);
    const Node b = make_node(b_objs, site, Species::Payload);
    const auto matrix = build_pair_selection_matrix(a, b, 5, 30.0, grid, kMuKm3PerS2);
    const double dv = mean_relative_velocity_km_s(a, b, grid, kMuKm3PerS2);
    for (int k = 0; k < 5; ++k) {
      for (int l = 0; l < 5; ++l) {
        REQUIRE(matrix.members_i[static_cast<std::size_t>(k)].size() == 1);
        const SpaceObject& q = a_objs[static_cast<std::size_t>(
            matrix.members_i[static_cast<std::size_t>(k)][0])];
        const SpaceObject& p = b_objs[static_cast<std::size_t>(
            matrix.members_j[static_cast<std::size_t>(l)][0])];
        const double d = q.diameter_m() + p.diameter_m();
        const double sigma = kPi / 4.0 * d * d * kM2ToKm2;
        const double rate = dv * sigma / grid.volume_km3(site) * kSecondsPerDay;
        CHECK(matrix.at(k, l) == doctest::Approx(1.0 - std::exp(-rate * 30.0)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("colliding pair selection") {
  const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
  const int site = grid.site_of(kEarthRadiusKm + 825.0, 30.0).site_id;
  Rng rng(91);

  SUBCASE("single objects are always the pair") {
    const Node a = make_node({ball(0.5, kEarthRadiusKm + 820.0, 10.0)}, site);
    const Node b = make_node({ball(1.0, kEarthRadiusKm + 830.0, 50.0)}, site, Species::Payload);
    const auto matrix = build_pair_selection_matrix(a, b, 4, 30.0, grid, kMuKm3PerS2);
    for (int k = 0; k < 20; ++k) {
      const auto [qa, qb] = select_colliding_pair(matrix, rng);
      CHECK(qa == 0);
      CHECK(qb == 0);
    }
  }
  SUBCASE("self pairs draw distinct objects") {
    const Node a = make_node({ball(0.5), ball(0.5)}, site);
    const auto matrix = build_pair_selection_matrix(a, a, 3, 30.0, grid, kMuKm3PerS2);
    for (int k = 0; k < 50; ++k) {
      const auto [qa, qb] = select_colliding_pair(matrix, rng);
      CHECK(qa != qb);
    }
  }
  SUBCASE("bin frequencies follow the matrix within 1%") {
    std::vector<SpaceObject> a_objs = {ball(0.1), ball(0.1), ball(2.0)};
    std::vector<SpaceObject> b_objs = {ball(0.2), ball(1.5), ball(1.5)};
    const Node a = make_node(a_objs, site);
    const Node b = make_node(b_objs, site, Species::Payload);
    const auto matrix = build_pair_selection_matrix(a, b, 2, 30.0, grid, kMuKm3PerS2);
    std::map<std::pair<int, int>, long> hits;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const auto [qa, qb] = select_colliding_pair(matrix, rng);
      const int bin_a = a_objs[static_cast<std::size_t>(qa)].radius_m < 1.0 ? 0 : 1;
      const int bin_b = b_objs[static_cast<std::size_t>(qb)].radius_m < 1.0 ? 0 : 1;
      hits[{bin_a, bin_b}]++;
    }
    const double total = matrix.total();
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        const double expected = matrix.at(k, l) / total;
        const double observed = static_cast<double>(hits[{k, l}]) / draws;
        CHECK(std::fabs(observed - expected) < 0.01);
      }
    }
  }
  SUBCASE("an all-zero matrix cannot produce a pair") {
    const Node a = make_node({ball(0.5)}, site);
    const auto matrix = build_pair_selection_matrix(a, a, 3, 30.0, grid, kMuKm3PerS2);
    CHECK_THROWS(select_colliding_pair(matrix, rng));
  }
}
