#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leonet/decay.hpp"
#include "leonet/network_state.hpp"
#include "leonet/rng.hpp"

namespace leonet {

// Impact-energy classification. Catastrophic when the energy-to-target-mass
// ratio (0.5 m_small dv^2 / m_large) reaches 40 J/g; the boundary counts as
// catastrophic. Returns the classification and the mass feeding the fragment
// count law: the combined parent mass when catastrophic, otherwise
// m_small * dv^2 with dv in km/s.
std::pair<bool, double> classify_collision(const SpaceObject& a, const SpaceObject& b,
                                           double dv_km_s);

inline constexpr double kCatastrophicThresholdJPerG = 40.0;

// Cumulative power-law count of fragments at least lc_m across:
// floor(0.1 M^0.75 lc^-1.71).
std::int64_t fragment_count(double mass_kg, double lc_m);

struct CollisionEvent {
  SpaceObject parent_a;
  SpaceObject parent_b;
  double dv_km_s = 0.0;
  int site_id = -1;  // site the collision happens in
  bool catastrophic = false;
  double breakup_mass_kg = 0.0;  // M entering the count law
};

CollisionEvent make_collision_event(const SpaceObject& a, const SpaceObject& b, double dv_km_s,
                                    int site_id);

// Clamped piecewise-linear function of log10(characteristic length).
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> pts;  // (x, y), x ascending
  double operator()(double x) const;
};

// Fragment area-to-mass / ejection-velocity parameterization of the standard
// breakup model (2001 revision), per parent family. Values live in data so
// alternative calibrations can be loaded from a constants file.
struct AmFamily {
  PiecewiseLinear alpha;   // weight of the first lognormal component
  PiecewiseLinear mu1;
  PiecewiseLinear sigma1;
  PiecewiseLinear mu2;
  PiecewiseLinear sigma2;
};

struct BreakupModelParams {
  AmFamily rocket_body;
  AmFamily spacecraft;
  PiecewiseLinear soc_mu;     // single-component family for small fragments
  PiecewiseLinear soc_sigma;
  double bridge_lo_m = 0.08;  // below: small-object family
  double bridge_hi_m = 0.11;  // above: two-component family
  double area_coef_small = 0.540424;
  double area_exp_small = 2.0;
  double area_coef_large = 0.556945;
  double area_exp_large = 2.0047077;
  double length_break_m = 0.00167;
  double dv_mu_slope = 0.9;   // log10 dv = N(slope * chi + offset, sigma), dv in m/s
  double dv_mu_offset = 2.9;
  double dv_sigma = 0.4;

  static BreakupModelParams builtin();
  static BreakupModelParams from_file(const std::string& path);
  void save(const std::string& path) const;

  double mean_area_m2(double length_m) const;
  // chi = log10(A/m) sampled for a fragment of the given length.
  double sample_chi(double length_m, bool rocket_body_parent, Rng& rng) const;
  double sample_ejection_dv_m_s(double chi, Rng& rng) const;
};

struct FragmentBatch {
  std::vector<SpaceObject> fragments;  // bound orbits only
  int unbound_count = 0;               // ejected on escape trajectories
  double unbound_mass_kg = 0.0;

  double total_mass_kg() const;
};

// Draws fragment sizes from the truncated power law implied by the count
// law, assigns A/m, mass and ejection velocity from the breakup-model
// families, converts the ejection kick into new (a, e, i), and enforces mass
// conservation: overshoot is rescaled away; for catastrophic events any
// deficit is added onto 2-8 randomly chosen fragments.
FragmentBatch synthesize_fragments(const CollisionEvent& event, double lc_m,
                                   const BreakupModelParams& params, const SiteGrid& grid,
                                   double mu_km3_s2, Rng& rng, std::int64_t first_object_id);

struct FlowAssignment {
  std::vector<int> dest_site;              // parallel to batch.fragments; -1 reentered
  std::vector<std::pair<int, long>> site_counts;  // (site_id, count), site-ascending
  long reentered = 0;
  long escaped = 0;
  long in_domain = 0;
};

// Routes every fragment to the F node of its sampled residence shell and
// inclination bin. The counts over destinations plus reentered/escaped equal
// the batch size.
FlowAssignment assign_fragment_flows(const FragmentBatch& batch, const SiteGrid& grid, Rng& rng);

}  // namespace leonet
