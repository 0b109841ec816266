#include "leonet/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace leonet {

namespace {

// Mid-activity density profile (piecewise-exponential fit to a standard
// static atmosphere) and the solar-cycle modulation width in decades.
// The high/low extremes are rho_mid * 10^(+-m/2), which reproduces the small
// swing near 200 km and the order-of-magnitude swings at 800+ km.
constexpr double kProfileAltKm[] = {100, 150, 200,  250,  300,  350,  400,  450,  500,
                                    600, 700, 800,  900,  1000, 1250, 1500, 2000, 2200};
constexpr double kProfileRho[] = {3.443e-7, 1.346e-9, 1.813e-10, 4.711e-11, 1.572e-11,
                                  6.187e-12, 2.421e-12, 1.030e-12, 4.529e-13, 9.451e-14,
                                  2.349e-14, 7.605e-15, 3.409e-15, 1.962e-15, 7.722e-16,
                                  3.036e-16, 4.713e-17, 2.236e-17};
constexpr int kProfileLen = static_cast<int>(sizeof(kProfileAltKm) / sizeof(double));

double modulation_decades(double alt_km) {
  const double t = std::clamp((alt_km - 150.0) / 650.0, 0.0, 1.0);
  return 0.2 + 1.3 * t;
}

double builtin_log10_rho(double alt_km, double phase) {
  const double* begin = kProfileAltKm;
  const double* end = kProfileAltKm + kProfileLen;
  const double h = std::clamp(alt_km, kProfileAltKm[0], kProfileAltKm[kProfileLen - 1]);
  const double* hi = std::upper_bound(begin, end, h);
  int i1 = static_cast<int>(hi - begin);
  i1 = std::clamp(i1, 1, kProfileLen - 1);
  const int i0 = i1 - 1;
  const double t = (h - kProfileAltKm[i0]) / (kProfileAltKm[i1] - kProfileAltKm[i0]);
  const double base = (1.0 - t) * std::log10(kProfileRho[i0]) + t * std::log10(kProfileRho[i1]);
  return base + (phase - 0.5) * modulation_decades(h);
}

}  // namespace

DensityModel DensityModel::static_exponential(double rho0_kg_m3, double h0_km,
                                              double scale_height_km) {
  DensityModel m;
  m.mode_ = Mode::StaticExponential;
  m.rho0_kg_m3_ = rho0_kg_m3;
  m.h0_km_ = h0_km;
  m.scale_height_km_ = scale_height_km;
  return m;
}

DensityModel DensityModel::builtin_table(double cycle_years, double phase_offset_years) {
  DensityModel m;
  m.mode_ = Mode::Table;
  m.cycle_years_ = cycle_years;
  m.phase_offset_years_ = phase_offset_years;
  m.alt_grid_km_.assign(kProfileAltKm, kProfileAltKm + kProfileLen);
  m.phase_grid_ = {0.0, 0.25, 0.5, 0.75, 1.0};
  m.log10_rho_.reserve(m.alt_grid_km_.size() * m.phase_grid_.size());
  for (double alt : m.alt_grid_km_) {
    for (double s : m.phase_grid_) {
      m.log10_rho_.push_back(builtin_log10_rho(alt, s));
    }
  }
  return m;
}

DensityModel DensityModel::from_table_file(const std::string& path, double cycle_years,
                                           double phase_offset_years) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("density table: cannot open " + path);
  std::map<double, std::map<double, double>> grid;  // alt -> phase -> rho
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped && line.find_first_not_of("0123456789.,+-eE \t") != std::string::npos) {
      header_skipped = true;
      continue;
    }
    std::istringstream ss(line);
    std::string cell;
    double v[3];
    int n = 0;
    while (n < 3 && std::getline(ss, cell, ',')) v[n++] = std::stod(cell);
    if (n != 3) throw std::runtime_error("density table: bad row '" + line + "'");
    if (!(v[2] > 0.0)) throw std::runtime_error("density table: densities must be positive");
    grid[v[0]][v[1]] = v[2];
  }
  if (grid.empty()) throw std::runtime_error("density table: no rows in " + path);

  DensityModel m;
  m.mode_ = Mode::Table;
  m.cycle_years_ = cycle_years;
  m.phase_offset_years_ = phase_offset_years;
  const auto& first_row = grid.begin()->second;
  for (const auto& [phase, rho] : first_row) m.phase_grid_.push_back(phase);
  for (const auto& [alt, row] : grid) {
    if (row.size() != m.phase_grid_.size()) {
      throw std::runtime_error("density table: ragged phase grid");
    }
    m.alt_grid_km_.push_back(alt);
    for (const auto& [phase, rho] : row) m.log10_rho_.push_back(std::log10(rho));
  }
  return m;
}

DensityModel DensityModel::from_config(const SimConfig& config) {
  if (config.density_mode == DensityMode::StaticExponential) {
    return static_exponential(config.static_rho0_kg_m3, config.static_h0_km,
                              config.static_scale_height_km);
  }
  if (!config.density_table_file.empty()) {
    return from_table_file(config.density_table_file, config.solar_cycle_years,
                           config.solar_phase_offset_years);
  }
  return builtin_table(config.solar_cycle_years, config.solar_phase_offset_years);
}

double DensityModel::solar_phase(double epoch_years) const {
  return 0.5 * (1.0 + std::sin(2.0 * kPi * (epoch_years - phase_offset_years_) / cycle_years_));
}

double DensityModel::table_log10_rho(double alt_km, double phase) const {
  const auto& alts = alt_grid_km_;
  const auto& phases = phase_grid_;
  if (alt_km < alts.front() || alt_km > alts.back()) {
    if (!warned_clamp_) {
      std::fprintf(stderr, "density: altitude %.1f km outside table, clamping\n", alt_km);
      warned_clamp_ = true;
    }
    alt_km = std::clamp(alt_km, alts.front(), alts.back());
  }
  phase = std::clamp(phase, phases.front(), phases.back());

  auto bracket = [](const std::vector<double>& g, double x, int& i0, double& t) {
    auto hi = std::upper_bound(g.begin(), g.end(), x);
    int i1 = static_cast<int>(hi - g.begin());
    i1 = std::clamp(i1, 1, static_cast<int>(g.size()) - 1);
    i0 = i1 - 1;
    const double span = g[static_cast<std::size_t>(i1)] - g[static_cast<std::size_t>(i0)];
    t = span > 0.0 ? (x - g[static_cast<std::size_t>(i0)]) / span : 0.0;
  };

  int ia;
  double ta;
  bracket(alts, alt_km, ia, ta);
  int ip;
  double tp;
  bracket(phases, phase, ip, tp);

  const std::size_t np = phases.size();
  auto at = [&](int i, int p) { return log10_rho_[static_cast<std::size_t>(i) * np + p]; };
  const double lo = (1.0 - tp) * at(ia, ip) + tp * at(ia, ip + 1);
  const double hi = (1.0 - tp) * at(ia + 1, ip) + tp * at(ia + 1, ip + 1);
  return (1.0 - ta) * lo + ta * hi;
}

double DensityModel::density_kg_m3(double alt_km, double epoch_years) const {
  if (mode_ == Mode::StaticExponential) {
    return rho0_kg_m3_ * std::exp(-(alt_km - h0_km_) / scale_height_km_);
  }
  return std::pow(10.0, table_log10_rho(alt_km, solar_phase(epoch_years)));
}

void DensityModel::write_table_csv(const std::string& path) const {
  if (mode_ != Mode::Table) throw std::logic_error("write_table_csv: not a table model");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_table_csv: cannot open " + path);
  out << "altitude_km,phase_index,rho_kg_m3\n";
  char buf[64];
  const std::size_t np = phase_grid_.size();
  for (std::size_t i = 0; i < alt_grid_km_.size(); ++i) {
    for (std::size_t p = 0; p < np; ++p) {
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.9e\n", alt_grid_km_[i], phase_grid_[p],
                    std::pow(10.0, log10_rho_[i * np + p]));
      out << buf;
    }
  }
}

DragResult drag_step(double a_km, double ecc, double cd, double area_per_mass_m2_kg,
                     double rho_kg_m3, double dt_s, double mu_km3_s2) {
  const double a_m = a_km * 1000.0;
  const double mu_m = mu_km3_s2 * 1e9;
  const double c = 0.5 * cd * area_per_mass_m2_kg * rho_kg_m3;  // 1/m
  if (c * dt_s == 0.0) return {false, a_km, ecc};  // exact identity in vacuum
  const double n = std::sqrt(mu_m / (a_m * a_m * a_m));         // 1/s
  const bool circular = ecc == 0.0;
  const double beta = circular ? 1.0 : std::sqrt(3.0) / 2.0 * ecc;
  const double phi = std::atan(beta) - beta * n * a_m * c * dt_s;
  if (phi <= 0.0) return {true, 0.0, 0.0};
  const double tan_phi = std::tan(phi);
  DragResult out;
  out.reentered = false;
  out.a_km = a_m / (beta * beta) * tan_phi * tan_phi / 1000.0;
  out.ecc = circular ? 0.0 : 2.0 / std::sqrt(3.0) * tan_phi;
  return out;
}

namespace {

// Mean anomaly as a function of true anomaly; monotone from 0 to pi over
// half an orbit, so the shell residence fraction is delta(g)/pi.
double mean_anomaly_of_true(double theta, double ecc) {
  if (theta <= 0.0) return 0.0;
  if (theta >= kPi) return kPi;
  const double ea =
      2.0 * std::atan(std::sqrt((1.0 - ecc) / (1.0 + ecc)) * std::tan(theta / 2.0));
  const double sin_ea_term =
      ecc * std::sqrt(1.0 - ecc * ecc) * std::sin(theta) / (1.0 + ecc * std::cos(theta));
  return ea - sin_ea_term;
}

// True anomaly at which the orbit radius equals r; clamped to [0, pi].
double true_anomaly_at_radius(double r, double a, double ecc) {
  const double p = a * (1.0 - ecc * ecc);
  const double c = std::clamp((p / r - 1.0) / ecc, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace

void residence_weights(double a_km, double ecc, const SiteGrid& grid, ResidenceWeights& out) {
  out.w.clear();
  out.below = 0.0;
  out.above = 0.0;
  out.first_shell = 0;

  if (ecc <= 0.0) {
    const int shell = grid.shell_index(a_km - grid.r_earth_km());
    if (shell < 0) {
      out.below = 1.0;
    } else if (shell >= grid.n_shells()) {
      out.above = 1.0;
    } else {
      out.first_shell = shell;
      out.w.assign(1, 1.0);
    }
    return;
  }

  const double r_p = a_km * (1.0 - ecc);
  const double r_a = a_km * (1.0 + ecc);
  const double floor_r = grid.r_earth_km() + grid.alt_min_km();
  const double ceil_r = grid.r_earth_km() + grid.alt_max_km();

  auto g_at_radius = [&](double r) {
    if (r <= r_p) return 0.0;
    if (r >= r_a) return kPi;
    return mean_anomaly_of_true(true_anomaly_at_radius(r, a_km, ecc), ecc);
  };

  out.below = g_at_radius(floor_r) / kPi;
  out.above = (kPi - g_at_radius(ceil_r)) / kPi;

  // Shells intersecting [r_p, r_a].
  int lo = grid.shell_index(r_p - grid.r_earth_km());
  int hi = grid.shell_index(r_a - grid.r_earth_km());
  lo = std::clamp(lo, 0, grid.n_shells() - 1);
  hi = std::clamp(hi, 0, grid.n_shells() - 1);
  out.first_shell = lo;
  out.w.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (int shell = lo; shell <= hi; ++shell) {
    const double r_lo = std::max(grid.shell_lo_radius_km(shell), floor_r);
    const double r_hi = std::min(grid.shell_lo_radius_km(shell + 1), ceil_r);
    if (r_hi <= r_lo) continue;
    out.w[static_cast<std::size_t>(shell - lo)] =
        std::max(0.0, (g_at_radius(r_hi) - g_at_radius(r_lo)) / kPi);
  }
}

ResidenceWeights residence_weights(double a_km, double ecc, const SiteGrid& grid) {
  ResidenceWeights out;
  residence_weights(a_km, ecc, grid, out);
  return out;
}

RouteResult route_by_residence(double a_km, double ecc, double inc_deg, const SiteGrid& grid,
                               Rng& rng) {
  if (a_km - grid.r_earth_km() > grid.alt_max_km()) return {Placement::Escaped, -1};
  if (a_km - grid.r_earth_km() < grid.alt_min_km() && ecc <= 0.0) return {Placement::Reentered, -1};

  thread_local ResidenceWeights scratch;
  residence_weights(a_km, ecc, grid, scratch);

  double total = scratch.below + scratch.above;
  for (double w : scratch.w) total += w;
  if (!(total > 0.0)) return {Placement::Reentered, -1};

  double u = rng.uniform() * total;
  if ((u -= scratch.below) <= 0.0) return {Placement::Reentered, -1};
  for (std::size_t k = 0; k < scratch.w.size(); ++k) {
    if ((u -= scratch.w[k]) <= 0.0) {
      const int shell = scratch.first_shell + static_cast<int>(k);
      return {Placement::InDomain, grid.site_id(shell, grid.inc_bin_index(inc_deg))};
    }
  }
  // Above-domain draw with an in-domain semi-major axis: clamp to the top
  // shell rather than dropping a bound object.
  return {Placement::InDomain, grid.site_id(grid.n_shells() - 1, grid.inc_bin_index(inc_deg))};
}

ShellFlows compute_shell_flows(NetworkState& state, const SimConfig& config,
                               const DensityModel& density, Rng& rng) {
  const SiteGrid& grid = state.grid();
  const int n_nodes = state.n_nodes();
  ShellFlows out;
  out.eps_out.assign(static_cast<std::size_t>(n_nodes), 0);
  out.eps_in.assign(static_cast<std::size_t>(n_nodes), 0);
  out.reentered_per_node.assign(static_cast<std::size_t>(n_nodes), 0);

  const double dt_s = config.dt_days * kSecondsPerDay;
  std::vector<std::vector<SpaceObject>> arrivals(static_cast<std::size_t>(n_nodes));
  std::map<std::pair<int, int>, long> flow_counts;

  for (int idx = 0; idx < n_nodes; ++idx) {
    Node& node = state.node(idx);
    if (node.empty()) continue;
    const int shell = grid.shell_of(node.site_id);
    const double rho = density.density_kg_m3(grid.shell_mid_alt_km(shell), state.epoch_years);

    std::size_t keep = 0;
    for (std::size_t q = 0; q < node.objects.size(); ++q) {
      SpaceObject obj = node.objects[q];
      const DragResult dragged = drag_step(obj.a_km, obj.ecc, obj.cd, obj.area_per_mass_m2_kg(),
                                           rho, dt_s, config.mu_km3_s2);
      if (dragged.reentered) {
        out.reentered.push_back(obj);
        out.reentered_per_node[static_cast<std::size_t>(idx)]++;
        continue;
      }
      obj.a_km = dragged.a_km;
      obj.ecc = dragged.ecc;

      const RouteResult dest = route_by_residence(obj.a_km, obj.ecc, obj.inc_deg, grid, rng);
      if (dest.placement == Placement::Reentered) {
        out.reentered.push_back(obj);
        out.reentered_per_node[static_cast<std::size_t>(idx)]++;
        continue;
      }
      if (dest.placement == Placement::Escaped) {
        // Drag cannot raise an orbit; keep the object in its top shell.
        node.objects[keep++] = obj;
        continue;
      }
      const int dst_idx = state.node_index(obj.species, dest.site_id);
      if (dst_idx == idx) {
        node.objects[keep++] = obj;
      } else {
        arrivals[static_cast<std::size_t>(dst_idx)].push_back(obj);
        out.eps_out[static_cast<std::size_t>(idx)]++;
        out.eps_in[static_cast<std::size_t>(dst_idx)]++;
        flow_counts[{idx, dst_idx}]++;
      }
    }
    node.objects.resize(keep);
  }

  for (int idx = 0; idx < n_nodes; ++idx) {
    auto& incoming = arrivals[static_cast<std::size_t>(idx)];
    if (incoming.empty()) continue;
    Node& node = state.node(idx);
    node.objects.insert(node.objects.end(), incoming.begin(), incoming.end());
  }

  out.flows.reserve(flow_counts.size());
  for (const auto& [key, count] : flow_counts) {
    out.flows.push_back({key.first, key.second, count});
  }
  return out;
}

}  // namespace leonet
