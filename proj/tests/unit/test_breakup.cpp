#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "leonet/breakup.hpp"

using namespace leonet;

namespace {

SpaceObject parent(double mass_kg, double radius_m, Species species = Species::NonManoeuvrable,
                   double a_km = kEarthRadiusKm + 825.0, double ecc = 0.0,
                   double inc_deg = 53.0) {
  SpaceObject obj;
  obj.species = species;
  obj.a_km = a_km;
  obj.ecc = ecc;
  obj.inc_deg = inc_deg;
  obj.mass_kg = mass_kg;
  obj.radius_m = radius_m;
  obj.area_m2 = kPi * radius_m * radius_m;
  return obj;
}

}  // namespace

TEST_CASE("collision classification against the 40 J/g rule") {
  SUBCASE("energetic impactor is catastrophic") {
    const auto [cat, mass] = classify_collision(parent(1000.0, 1.5), parent(10.0, 0.2), 10.0);
    CHECK(cat);
    CHECK(mass == doctest::Approx(1010.0));
  }
  SUBCASE("feeble impactor is not") {
    const auto [cat, mass] = classify_collision(parent(1000.0, 1.5), parent(0.01, 0.05), 1.0);
    CHECK_FALSE(cat);
    CHECK(mass == doctest::Approx(0.01));
  }
  SUBCASE("the threshold itself counts as catastrophic") {
    // m_small=1, m_large=2, dv=0.4 km/s -> exactly 40 J/g.
    const auto [cat, mass] = classify_collision(parent(2.0, 0.3), parent(1.0, 0.2), 0.4);
    CHECK(cat);
    CHECK(mass == doctest::Approx(3.0));
  }
}

TEST_CASE("fragment count law") {
  CHECK(fragment_count(1000.0, 0.1) == 912);  // floor(0.1 * 1000^0.75 * 0.1^-1.71)
  CHECK(fragment_count(1000.0, 1.0) == 17);
  CHECK(fragment_count(1000.0, 1e6) == 0);

  SUBCASE("monotone in mass, antitone in the size cutoff") {
    CHECK(fragment_count(2000.0, 0.1) > fragment_count(1000.0, 0.1));
    CHECK(fragment_count(1000.0, 0.2) < fragment_count(1000.0, 0.1));
  }
}

TEST_CASE("fragment synthesis conserves catastrophic mass") {
  const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
  const int site = grid.site_of(kEarthRadiusKm + 825.0, 53.0).site_id;
  const BreakupModelParams params = BreakupModelParams::builtin();

  SUBCASE("2000 kg event sums back to 2000 kg") {
    const CollisionEvent ev =
        make_collision_event(parent(1000.0, 1.5), parent(1000.0, 1.5), 10.0, site);
    REQUIRE(ev.catastrophic);
    Rng rng(3);
    const FragmentBatch batch = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng, 1);
    CHECK(static_cast<std::int64_t>(batch.fragments.size()) + batch.unbound_count ==
          fragment_count(2000.0, 0.1));
    CHECK(batch.total_mass_kg() == doctest::Approx(2000.0).epsilon(1e-9));
    for (const SpaceObject& f : batch.fragments) {
      CHECK(f.species == Species::Fragment);
      CHECK(f.diameter_m() >= 0.1);
    }
  }
  SUBCASE("conservation holds across random events") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const double m_a = rng.uniform(200.0, 5000.0);
      const double m_b = rng.uniform(200.0, 5000.0);
      const CollisionEvent ev = make_collision_event(parent(m_a, 1.0 + m_a / 4000.0),
                                                     parent(m_b, 1.0 + m_b / 4000.0), 10.0, site);
      REQUIRE(ev.catastrophic);
      Rng ev_rng = rng.fork(static_cast<std::uint64_t>(trial));
      const FragmentBatch batch =
          synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, ev_rng, 1);
      CHECK(batch.total_mass_kg() == doctest::Approx(m_a + m_b).epsilon(1e-9));
    }
  }
  SUBCASE("non-catastrophic batches stay within the small parent's mass") {
    const CollisionEvent ev =
        make_collision_event(parent(8000.0, 2.0), parent(40.0, 0.4), 0.9, site);
    REQUIRE_FALSE(ev.catastrophic);
    Rng rng(5);
    const FragmentBatch batch = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng, 1);
    CHECK(static_cast<std::int64_t>(batch.fragments.size()) + batch.unbound_count ==
          fragment_count(ev.breakup_mass_kg, 0.1));
    CHECK(batch.total_mass_kg() <= 40.0 * (1.0 + 1e-12));
  }
  SUBCASE("oversized cutoff yields an empty batch") {
    const CollisionEvent ev = make_collision_event(parent(10.0, 0.3), parent(10.0, 0.3), 10.0, site);
    Rng rng(7);
    const FragmentBatch batch = synthesize_fragments(ev, 50.0, params, grid, kMuKm3PerS2, rng, 1);
    CHECK(batch.fragments.empty());
    CHECK(batch.unbound_count == 0);
  }
  SUBCASE("fixed seeds reproduce batches bit for bit") {
    const CollisionEvent ev =
        make_collision_event(parent(1500.0, 1.8), parent(700.0, 1.1), 11.0, site);
    Rng rng_a(99), rng_b(99);
    const FragmentBatch one = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng_a, 1);
    const FragmentBatch two = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng_b, 1);
    REQUIRE(one.fragments.size() == two.fragments.size());
    for (std::size_t k = 0; k < one.fragments.size(); ++k) {
      CHECK(one.fragments[k].a_km == two.fragments[k].a_km);
      CHECK(one.fragments[k].mass_kg == two.fragments[k].mass_kg);
    }
  }
}

TEST_CASE("fragment routing partitions the batch") {
  const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
  const int site = grid.site_of(kEarthRadiusKm + 825.0, 53.0).site_id;
  Rng rng(23);

  SUBCASE("circular fragments in the parent shell stay in the parent site") {
    FragmentBatch batch;
    for (int k = 0; k < 40; ++k) {
      SpaceObject f = parent(1.0, 0.1, Species::Fragment, kEarthRadiusKm + 820.0 + 0.2 * k);
      f.ecc = 0.0;
      batch.fragments.push_back(f);
    }
    const FlowAssignment flows = assign_fragment_flows(batch, grid, rng);
    REQUIRE(flows.site_counts.size() == 1);
    CHECK(flows.site_counts[0].first == site);
    CHECK(flows.site_counts[0].second == 40);
  }
  SUBCASE("counts over destinations plus reentered/escaped equal the batch size") {
    const BreakupModelParams params = BreakupModelParams::builtin();
    const CollisionEvent ev =
        make_collision_event(parent(2000.0, 1.8), parent(1500.0, 1.5), 10.0, site);
    const FragmentBatch batch = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng, 1);
    const FlowAssignment flows = assign_fragment_flows(batch, grid, rng);
    long sum = flows.reentered + (flows.escaped - batch.unbound_count);
    for (const auto& [dest, count] : flows.site_counts) sum += count;
    CHECK(sum == static_cast<long>(batch.fragments.size()));
  }
  SUBCASE("the ejection spectrum spreads fragments above and below the parent shell") {
    const BreakupModelParams params = BreakupModelParams::builtin();
    const CollisionEvent ev =
        make_collision_event(parent(6000.0, 2.5), parent(6000.0, 2.5), 10.0, site);
    const FragmentBatch batch = synthesize_fragments(ev, 0.1, params, grid, kMuKm3PerS2, rng, 1);
    const FlowAssignment flows = assign_fragment_flows(batch, grid, rng);
    const int parent_shell = grid.shell_of(site);
    long above = 0, below = 0;
    for (const auto& [dest, count] : flows.site_counts) {
      const int shell = grid.shell_of(dest);
      if (shell > parent_shell) above += count;
      if (shell < parent_shell) below += count;
    }
    CHECK(above > 0);
    CHECK(below > 0);
  }
}

TEST_CASE("breakup parameter files round trip") {
  const BreakupModelParams params = BreakupModelParams::builtin();
  const auto path = std::filesystem::temp_directory_path() / "leonet_breakup_params.txt";
  params.save(path.string());
  const BreakupModelParams loaded = BreakupModelParams::from_file(path.string());
  CHECK(loaded.bridge_lo_m == doctest::Approx(params.bridge_lo_m));
  CHECK(loaded.dv_sigma == doctest::Approx(params.dv_sigma));
  for (double lc : {-2.0, -1.4, -0.9, -0.3, 0.2}) {
    CHECK(loaded.rocket_body.alpha(lc) == doctest::Approx(params.rocket_body.alpha(lc)));
    CHECK(loaded.spacecraft.mu2(lc) == doctest::Approx(params.spacecraft.mu2(lc)));
  }
  std::filesystem::remove(path);
}
