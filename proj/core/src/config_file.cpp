#include "leonet/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leonet {

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  SimConfig cfg;
  std::string line, section;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) {
        throw std::runtime_error("config: unterminated section at line " + std::to_string(line_no));
      }
      section = line.substr(1, close - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: expected key = value at line " + std::to_string(line_no));
    }
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(eq + 1);
    const auto vfirst = value.find_first_not_of(" \t");
    value = vfirst == std::string::npos ? "" : value.substr(vfirst);

    auto num = [&]() { return std::stod(value); };
    const std::string qualified = section + "." + key;
    if (qualified == "sim.dt_days") cfg.dt_days = num();
    else if (qualified == "sim.horizon_years") cfg.horizon_years = num();
    else if (qualified == "sim.runs") cfg.n_runs = static_cast<int>(num());
    else if (qualified == "sim.rng_seed") cfg.rng_seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (qualified == "policy.s_cam") cfg.s_cam = num();
    else if (qualified == "policy.gamma_pmd") cfg.gamma_pmd = num();
    else if (qualified == "policy.kappa_small") cfg.kappa_small = num();
    else if (qualified == "policy.mission_lifetime_years") cfg.mission_lifetime_years = num();
    else if (qualified == "policy.adr_per_year_p") cfg.adr_per_year[0] = num();
    else if (qualified == "policy.adr_per_year_u") cfg.adr_per_year[1] = num();
    else if (qualified == "policy.adr_per_year_n") cfg.adr_per_year[2] = num();
    else if (qualified == "policy.adr_per_year_f") cfg.adr_per_year[3] = num();
    else if (qualified == "fragments.lc_min_m") cfg.lc_min_m = num();
    else if (qualified == "fragments.n_size_bins") cfg.n_size_bins = static_cast<int>(num());
    else if (qualified == "grid.shell_km") cfg.shell_km = num();
    else if (qualified == "grid.inc_bin_deg") cfg.inc_bin_deg = num();
    else if (qualified == "grid.alt_min_km") cfg.alt_min_km = num();
    else if (qualified == "grid.alt_max_km") cfg.alt_max_km = num();
    else if (qualified == "earth.mu_km3_s2") cfg.mu_km3_s2 = num();
    else if (qualified == "earth.r_earth_km") cfg.r_earth_km = num();
    else if (qualified == "atmosphere.mode") {
      if (value == "table") cfg.density_mode = DensityMode::Table;
      else if (value == "static_exponential") cfg.density_mode = DensityMode::StaticExponential;
      else throw std::runtime_error("config: unknown atmosphere mode '" + value + "'");
    } else if (qualified == "atmosphere.table_file") cfg.density_table_file = value;
    else if (qualified == "atmosphere.solar_cycle_years") cfg.solar_cycle_years = num();
    else if (qualified == "atmosphere.solar_phase_offset_years") cfg.solar_phase_offset_years = num();
    else if (qualified == "atmosphere.static_rho0_kg_m3") cfg.static_rho0_kg_m3 = num();
    else if (qualified == "atmosphere.static_h0_km") cfg.static_h0_km = num();
    else if (qualified == "atmosphere.static_scale_height_km") cfg.static_scale_height_km = num();
    else {
      throw std::runtime_error("config: unknown key '" + qualified + "' at line " +
                               std::to_string(line_no));
    }
  }
  cfg.check();
  return cfg;
}

void save_sim_config(const std::string& path, const SimConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot open " + path);
  out.precision(17);
  out << "[sim]\n"
      << "dt_days = " << cfg.dt_days << "\n"
      << "horizon_years = " << cfg.horizon_years << "\n"
      << "runs = " << cfg.n_runs << "\n"
      << "rng_seed = " << cfg.rng_seed << "\n\n"
      << "[policy]\n"
      << "s_cam = " << cfg.s_cam << "\n"
      << "gamma_pmd = " << cfg.gamma_pmd << "\n"
      << "kappa_small = " << cfg.kappa_small << "\n"
      << "mission_lifetime_years = " << cfg.mission_lifetime_years << "\n"
      << "adr_per_year_p = " << cfg.adr_per_year[0] << "\n"
      << "adr_per_year_u = " << cfg.adr_per_year[1] << "\n"
      << "adr_per_year_n = " << cfg.adr_per_year[2] << "\n"
      << "adr_per_year_f = " << cfg.adr_per_year[3] << "\n\n"
      << "[fragments]\n"
      << "lc_min_m = " << cfg.lc_min_m << "\n"
      << "n_size_bins = " << cfg.n_size_bins << "\n\n"
      << "[grid]\n"
      << "shell_km = " << cfg.shell_km << "\n"
      << "inc_bin_deg = " << cfg.inc_bin_deg << "\n"
      << "alt_min_km = " << cfg.alt_min_km << "\n"
      << "alt_max_km = " << cfg.alt_max_km << "\n\n"
      << "[earth]\n"
      << "mu_km3_s2 = " << cfg.mu_km3_s2 << "\n"
      << "r_earth_km = " << cfg.r_earth_km << "\n\n"
      << "[atmosphere]\n"
      << "mode = " << (cfg.density_mode == DensityMode::Table ? "table" : "static_exponential")
      << "\n";
  if (!cfg.density_table_file.empty()) out << "table_file = " << cfg.density_table_file << "\n";
  out << "solar_cycle_years = " << cfg.solar_cycle_years << "\n"
      << "solar_phase_offset_years = " << cfg.solar_phase_offset_years << "\n"
      << "static_rho0_kg_m3 = " << cfg.static_rho0_kg_m3 << "\n"
      << "static_h0_km = " << cfg.static_h0_km << "\n"
      << "static_scale_height_km = " << cfg.static_scale_height_km << "\n";
}

}  // namespace leonet
