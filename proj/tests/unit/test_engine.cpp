#include <cmath>
#include <map>

#include "doctest.h"
#include "leonet/engine.hpp"

using namespace leonet;

namespace {

SimConfig desk_config() {
  SimConfig config;
  config.dt_days = 30.0;
  config.shell_km = 50.0;
  config.inc_bin_deg = 60.0;
  config.n_size_bins = 10;
  return config;
}

Models vacuum_models() {
  Models models;
  models.density = DensityModel::static_exponential(0.0, 200.0, 60.0);
  return models;
}

SpaceObject make_obj(Species species, double alt_km, double inc_deg, double mass_kg,
                     double radius_m, double age_years = 0.0) {
  SpaceObject obj;
  obj.species = species;
  obj.a_km = kEarthRadiusKm + alt_km;
  obj.inc_deg = inc_deg;
  obj.mass_kg = mass_kg;
  obj.radius_m = radius_m;
  obj.area_m2 = kPi * radius_m * radius_m;
  obj.mission_elapsed_years = age_years;
  return obj;
}

std::shared_ptr<SiteGrid> desk_grid(const SimConfig& config) {
  return std::make_shared<SiteGrid>(config.alt_min_km, config.alt_max_km, config.shell_km,
                                    config.inc_bin_deg, config.r_earth_km);
}

}  // namespace

TEST_CASE("an empty state stays empty") {
  const SimConfig config = desk_config();
  NetworkState state(desk_grid(config));
  Rng rng(1);
  const StepReport report = step(state, config, vacuum_models(), rng);
  CHECK(state.total_count() == 0);
  CHECK(report.collisions.empty());
  CHECK(report.node_deltas.empty());
}

TEST_CASE("pure PMD limits") {
  SimConfig config = desk_config();
  config.kappa_small = 0.0;
  config.s_cam = 1.0;
  const auto grid = desk_grid(config);

  auto aged_payloads = [&](int n) {
    NetworkState state(grid);
    for (int k = 0; k < n; ++k) {
      state.insert(make_obj(Species::Payload, 780.0, 53.0, 500.0, 1.0,
                            config.mission_lifetime_years - 1e-4));
    }
    return state;
  };

  SUBCASE("gamma = 0 removes every expired payload") {
    config.gamma_pmd = 0.0;
    NetworkState state = aged_payloads(40);
    Rng rng(2);
    const StepReport report = step(state, config, vacuum_models(), rng);
    CHECK(report.pmd_expired == 40);
    CHECK(report.pmd_failed == 0);
    CHECK(state.count(Species::Payload) == 0);
    CHECK(state.count(Species::NonManoeuvrable) == 0);
  }
  SUBCASE("gamma = 1 converts every expired payload in place") {
    config.gamma_pmd = 1.0;
    NetworkState state = aged_payloads(40);
    Rng rng(3);
    const StepReport report = step(state, config, vacuum_models(), rng);
    CHECK(report.pmd_expired == 40);
    CHECK(report.pmd_failed == 40);
    CHECK(state.count(Species::Payload) == 0);
    const int site = grid->site_of(kEarthRadiusKm + 780.0, 53.0).site_id;
    CHECK(state.node(Species::NonManoeuvrable, site).count() == 40);
  }
}

TEST_CASE("the per-step bookkeeping identity is exact") {
  SimConfig config = desk_config();
  config.s_cam = 0.0;   // plenty of collisions
  config.gamma_pmd = 0.3;
  config.kappa_small = 5.3;
  config.adr_per_year[static_cast<std::size_t>(Species::Fragment)] = 7.0;
  const auto grid = desk_grid(config);

  NetworkState state(grid);
  Rng seed_rng(5);
  // Oversized radii keep the pair rates high so every cause fires within a
  // few steps.
  for (int k = 0; k < 400; ++k) {
    state.insert(make_obj(Species::Fragment, seed_rng.uniform(420.0, 470.0),
                          seed_rng.uniform(60.0, 120.0), seed_rng.uniform(0.5, 80.0),
                          seed_rng.uniform(10.0, 60.0)));
  }
  for (int k = 0; k < 60; ++k) {
    state.insert(make_obj(Species::Payload, seed_rng.uniform(420.0, 470.0),
                          seed_rng.uniform(60.0, 120.0), 700.0, 8.0,
                          seed_rng.uniform(0.0, 5.0)));
    state.insert(make_obj(Species::NonManoeuvrable, seed_rng.uniform(420.0, 470.0),
                          seed_rng.uniform(60.0, 120.0), 900.0, 9.0));
    state.insert(make_obj(Species::UpperStage, seed_rng.uniform(420.0, 470.0),
                          seed_rng.uniform(60.0, 120.0), 1800.0, 10.0));
  }
  Models models;  // built-in atmosphere so decay flows fire too
  Rng rng(6);
  EngineCarry carry;
  for (int s = 0; s < 6; ++s) {
    std::vector<long> before(static_cast<std::size_t>(state.n_nodes()));
    for (int idx = 0; idx < state.n_nodes(); ++idx) {
      before[static_cast<std::size_t>(idx)] = state.node(idx).count();
    }
    const StepReport report = step(state, config, models, rng, &carry);
    std::map<int, long> expected_delta;
    for (const auto& [node, causes] : report.node_deltas) {
      long sum = 0;
      for (long v : causes) sum += v;
      expected_delta[node] = sum;
    }
    for (int idx = 0; idx < state.n_nodes(); ++idx) {
      const long actual = state.node(idx).count() - before[static_cast<std::size_t>(idx)];
      const auto it = expected_delta.find(idx);
      const long expected = it == expected_delta.end() ? 0 : it->second;
      CHECK(actual == expected);
    }
  }
  CHECK(state.counters.total() > 0);  // the scenario actually exercised collisions
}

TEST_CASE("perfect avoidance keeps payloads out of every collision") {
  SimConfig config = desk_config();
  config.s_cam = 1.0;
  config.kappa_small = 0.0;
  const auto grid = desk_grid(config);
  NetworkState state(grid);
  Rng seed_rng(7);
  // Radii are exaggerated so pair rates are large enough that fragment
  // self-collisions certainly fire within ten steps.
  for (int k = 0; k < 600; ++k) {
    state.insert(make_obj(Species::Payload, seed_rng.uniform(500.0, 545.0),
                          seed_rng.uniform(45.0, 55.0), 500.0, 4.0));
    state.insert(make_obj(Species::Fragment, seed_rng.uniform(500.0, 545.0),
                          seed_rng.uniform(45.0, 55.0), 5.0, 40.0));
  }
  Rng rng(8);
  long payload_events = 0;
  long events = 0;
  for (int s = 0; s < 10; ++s) {
    const StepReport report = step(state, config, vacuum_models(), rng);
    events += static_cast<long>(report.collisions.size());
    for (const CollisionRecord& rec : report.collisions) {
      if (rec.species_a == Species::Payload || rec.species_b == Species::Payload) {
        ++payload_events;
      }
    }
    CHECK(report.small_collisions == 0);
  }
  CHECK(events > 0);          // fragments still collide with each other
  CHECK(payload_events == 0); // payloads never do
}

TEST_CASE("small collisions convert payloads in place") {
  SimConfig config = desk_config();
  config.s_cam = 1.0;
  config.kappa_small = 2000.0;  // exaggerated so the effect is certain
  const auto grid = desk_grid(config);
  NetworkState state(grid);
  Rng seed_rng(9);
  for (int k = 0; k < 200; ++k) {
    state.insert(make_obj(Species::Payload, seed_rng.uniform(780.0, 800.0), 53.0, 500.0, 3.0));
    state.insert(make_obj(Species::Fragment, seed_rng.uniform(780.0, 800.0), 53.0, 5.0, 1.0));
  }
  const long payloads_before = state.count(Species::Payload);
  Rng rng(10);
  const StepReport report = step(state, config, vacuum_models(), rng);
  CHECK(report.small_collisions > 0);
  CHECK(state.count(Species::Payload) == payloads_before - report.small_collisions);
  CHECK(state.counters.small == report.small_collisions);
}

TEST_CASE("ADR removes the heaviest objects first") {
  SimConfig config = desk_config();
  config.s_cam = 1.0;
  config.kappa_small = 0.0;
  config.adr_per_year[static_cast<std::size_t>(Species::NonManoeuvrable)] = 24.35;  // 2/step
  const auto grid = desk_grid(config);
  NetworkState state(grid);
  for (int k = 0; k < 10; ++k) {
    state.insert(make_obj(Species::NonManoeuvrable, 1500.0, 70.0, 100.0 * (k + 1), 1.0));
  }
  Rng rng(11);
  EngineCarry carry;
  const StepReport report = step(state, config, vacuum_models(), rng, &carry);
  CHECK(report.adr_removed == 2);
  double heaviest = 0.0;
  for (int site = 0; site < grid->n_sites(); ++site) {
    for (const SpaceObject& obj : state.node(Species::NonManoeuvrable, site).objects) {
      heaviest = std::max(heaviest, obj.mass_kg);
    }
  }
  CHECK(heaviest == doctest::Approx(800.0));  // 900 and 1000 kg are gone
}

TEST_CASE("monte carlo ensembles are reproducible") {
  SimConfig config = desk_config();
  config.horizon_years = 2.0;
  config.rng_seed = 1234;
  std::vector<SpaceObject> population;
  Rng seed_rng(12);
  for (int k = 0; k < 200; ++k) {
    population.push_back(make_obj(Species::Fragment, seed_rng.uniform(300.0, 900.0),
                                  seed_rng.uniform(40.0, 120.0), 5.0, 0.3));
  }
  for (int k = 0; k < 40; ++k) {
    population.push_back(make_obj(Species::Payload, seed_rng.uniform(500.0, 600.0), 53.0, 400.0,
                                  1.0, seed_rng.uniform(0.0, 5.0)));
  }
  Models models;
  const EnsembleStats a = run_monte_carlo(config, population, models, 4);
  const EnsembleStats b = run_monte_carlo(config, population, models, 4);
  REQUIRE(a.epochs_years.size() == b.epochs_years.size());
  for (std::size_t k = 0; k < a.epochs_years.size(); ++k) {
    for (int s = 0; s < kNumSpecies; ++s) {
      CHECK(a.species[static_cast<std::size_t>(s)].mean[k] ==
            b.species[static_cast<std::size_t>(s)].mean[k]);
      CHECK(a.species[static_cast<std::size_t>(s)].stddev[k] ==
            b.species[static_cast<std::size_t>(s)].stddev[k]);
    }
    CHECK(a.cumulative_catastrophic.mean[k] == b.cumulative_catastrophic.mean[k]);
  }

  SUBCASE("a single run has zero spread") {
    const EnsembleStats single = run_monte_carlo(config, population, models, 1);
    for (std::size_t k = 0; k < single.epochs_years.size(); ++k) {
      CHECK(single.total.stddev[k] == 0.0);
      CHECK(single.cumulative_collisions.stddev[k] == 0.0);
    }
  }
}
