#pragma once

#include <string>
#include <vector>

#include "leonet/network_state.hpp"
#include "leonet/rng.hpp"
#include "leonet/sim_config.hpp"

namespace leonet {

// Table-driven atmospheric density surrogate: a (altitude x solar-phase)
// grid modulated by a sinusoidal solar cycle, interpolated bilinearly in
// log10(rho). A static exponential profile is available as a fallback mode.
class DensityModel {
 public:
  static DensityModel static_exponential(double rho0_kg_m3, double h0_km, double scale_height_km);
  // CSV rows: altitude_km, phase_index (in [0,1]), rho_kg_m3.
  static DensityModel from_table_file(const std::string& path, double cycle_years,
                                      double phase_offset_years);
  static DensityModel builtin_table(double cycle_years = 11.0, double phase_offset_years = 0.0);
  static DensityModel from_config(const SimConfig& config);

  double density_kg_m3(double alt_km, double epoch_years) const;
  // Solar activity level in [0, 1]: 0 = minimum, 1 = maximum.
  double solar_phase(double epoch_years) const;

  bool is_table() const { return mode_ == Mode::Table; }
  void write_table_csv(const std::string& path) const;

 private:
  enum class Mode { Table, StaticExponential };
  Mode mode_ = Mode::Table;

  // table mode
  std::vector<double> alt_grid_km_;
  std::vector<double> phase_grid_;
  std::vector<double> log10_rho_;  // [alt][phase] row-major
  double cycle_years_ = 11.0;
  double phase_offset_years_ = 0.0;

  // static mode
  double rho0_kg_m3_ = 0.0;
  double h0_km_ = 0.0;
  double scale_height_km_ = 1.0;

  mutable bool warned_clamp_ = false;

  double table_log10_rho(double alt_km, double phase) const;
};

struct DragResult {
  bool reentered = false;  // the closed form fully decayed within the step
  double a_km = 0.0;
  double ecc = 0.0;
};

// Time-explicit analytic drag map for one step:
//   a'  = (a / beta^2) tan^2[arctan(beta) - beta n a C dt]
//   e'  = (2/sqrt(3))  tan[arctan(beta) - beta n a C dt]
// with C = cd (A/m) rho / 2, n = sqrt(mu / a^3) and beta = sqrt(3)/2 e for
// e != 0. For circular orbits beta = 1 is used in the a-update and e' stays
// pinned at 0: evaluating the e-update at beta = 1 would jump e to ~1.15,
// which contradicts a circular orbit remaining circular. Internal lengths
// are metres.
DragResult drag_step(double a_km, double ecc, double cd, double area_per_mass_m2_kg,
                     double rho_kg_m3, double dt_s, double mu_km3_s2 = kMuKm3PerS2);

// Fraction of orbital period spent inside each altitude shell, from the
// mean-anomaly sweep between the true anomalies where the orbit crosses the
// shell edges. Weights cover only shells intersecting [r_p, r_a]; mass below
// the domain floor and above the ceiling is reported separately.
struct ResidenceWeights {
  int first_shell = 0;          // grid shell index of w.front()
  std::vector<double> w;        // contiguous shells
  double below = 0.0;           // time fraction under the domain floor
  double above = 0.0;           // time fraction over the domain ceiling
};

ResidenceWeights residence_weights(double a_km, double ecc, const SiteGrid& grid);
void residence_weights(double a_km, double ecc, const SiteGrid& grid, ResidenceWeights& out);

// Categorical draw over the residence weights, with the labeled outcomes:
// a below-domain draw means the perigee dips under the floor (reentered); an
// above-domain draw for an in-domain semi-major axis clamps to the top shell.
struct RouteResult {
  Placement placement = Placement::InDomain;
  int site_id = -1;
};
RouteResult route_by_residence(double a_km, double ecc, double inc_deg, const SiteGrid& grid,
                               Rng& rng);

// One decay sub-step over the whole state: every object is drag-stepped at
// its shell's mid-altitude density, re-binned through the residence sampler,
// and the inter-node flows accumulated.
struct ShellFlows {
  std::vector<long> eps_out;  // per node index, inter-node outflow only
  std::vector<long> eps_in;   // per node index
  struct Flow {
    int src_node = -1;
    int dst_node = -1;
    long count = 0;
  };
  std::vector<Flow> flows;
  std::vector<long> reentered_per_node;  // objects lost below the domain floor
  std::vector<SpaceObject> reentered;
};

ShellFlows compute_shell_flows(NetworkState& state, const SimConfig& config,
                               const DensityModel& density, Rng& rng);

}  // namespace leonet
