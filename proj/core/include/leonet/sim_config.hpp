#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "leonet/constants.hpp"
#include "leonet/species.hpp"

namespace leonet {

enum class DensityMode { Table, StaticExponential };

struct SimConfig {
  // stepping
  double dt_days = 30.0;
  double horizon_years = 100.0;
  int n_runs = 1;
  std::uint64_t rng_seed = 1;

  // policies
  double s_cam = 0.9999;                  // CAM success fraction
  double gamma_pmd = 0.05;                // PMD failure fraction
  double kappa_small = 5.3;               // small-collision frequency factor
  double mission_lifetime_years = 5.0;
  std::array<double, kNumSpecies> adr_per_year{0.0, 0.0, 0.0, 0.0};

  // fragments
  double lc_min_m = 0.1;                  // minimum tracked fragment size
  int n_size_bins = 50;                   // radius bins for pair selection

  // discretisation
  double shell_km = 50.0;
  double inc_bin_deg = 60.0;
  double alt_min_km = 200.0;
  double alt_max_km = 2200.0;

  // physical constants
  double mu_km3_s2 = kMuKm3PerS2;
  double r_earth_km = kEarthRadiusKm;

  // atmosphere
  DensityMode density_mode = DensityMode::Table;
  std::string density_table_file;         // empty -> built-in table
  double solar_cycle_years = 11.0;
  double solar_phase_offset_years = 0.0;
  double static_rho0_kg_m3 = 2.789e-10;   // static-exponential fallback
  double static_h0_km = 200.0;
  double static_scale_height_km = 60.0;

  double dt_years() const { return dt_days / kDaysPerYear; }
  int n_steps() const { return static_cast<int>(horizon_years / dt_years() + 0.5); }

  // Throws std::invalid_argument on the first violated invariant.
  void check() const;

  // Stable hash over every field, used as a provenance line in exports.
  std::uint64_t hash() const;
};

}  // namespace leonet
