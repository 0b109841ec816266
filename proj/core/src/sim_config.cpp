#include "leonet/sim_config.hpp"

#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace leonet {

void SimConfig::check() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(dt_days > 0.0)) throw std::invalid_argument("config: dt_days must be > 0");
  if (!(horizon_years > 0.0)) throw std::invalid_argument("config: horizon_years must be > 0");
  if (n_runs < 1) throw std::invalid_argument("config: n_runs must be >= 1");
  if (!in_unit(s_cam)) throw std::invalid_argument("config: s_cam must lie in [0, 1]");
  if (!in_unit(gamma_pmd)) throw std::invalid_argument("config: gamma_pmd must lie in [0, 1]");
  if (!(kappa_small >= 0.0)) throw std::invalid_argument("config: kappa_small must be >= 0");
  if (!(mission_lifetime_years > 0.0)) throw std::invalid_argument("config: mission_lifetime_years must be > 0");
  for (double r : adr_per_year) {
    if (!(r >= 0.0)) throw std::invalid_argument("config: adr_per_year must be >= 0");
  }
  if (!(lc_min_m > 0.0)) throw std::invalid_argument("config: lc_min_m must be > 0");
  if (n_size_bins < 1) throw std::invalid_argument("config: n_size_bins must be >= 1");
  if (!(shell_km > 0.0) || !(inc_bin_deg > 0.0)) throw std::invalid_argument("config: cell sizes must be > 0");
  if (!(alt_min_km > 0.0) || !(alt_max_km > alt_min_km)) throw std::invalid_argument("config: bad altitude domain");
  if (!(mu_km3_s2 > 0.0) || !(r_earth_km > 0.0)) throw std::invalid_argument("config: bad constants");
  if (!(solar_cycle_years > 0.0)) throw std::invalid_argument("config: solar_cycle_years must be > 0");
}

namespace {
void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;  // FNV-1a
  }
}
void mix_double(std::uint64_t& h, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  mix(h, buf, std::strlen(buf));
}
}  // namespace

std::uint64_t SimConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : {dt_days, horizon_years, s_cam, gamma_pmd, kappa_small, mission_lifetime_years,
                   lc_min_m, shell_km, inc_bin_deg, alt_min_km, alt_max_km, mu_km3_s2, r_earth_km,
                   solar_cycle_years, solar_phase_offset_years, static_rho0_kg_m3, static_h0_km,
                   static_scale_height_km}) {
    mix_double(h, v);
  }
  for (double v : adr_per_year) mix_double(h, v);
  mix(h, &rng_seed, sizeof(rng_seed));
  mix(h, &n_runs, sizeof(n_runs));
  mix(h, &n_size_bins, sizeof(n_size_bins));
  const int dm = static_cast<int>(density_mode);
  mix(h, &dm, sizeof(dm));
  mix(h, density_table_file.data(), density_table_file.size());
  return h;
}

}  // namespace leonet
