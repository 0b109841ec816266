#pragma once

#include <vector>

#include "leonet/constants.hpp"

namespace leonet {

// One cell of the altitude-shell x inclination-bin discretisation.
// Intervals are half-open [lo, hi); the topmost shell and the last
// inclination bin are closed so boundary values have a deterministic home.
struct OrbitSite {
  int site_id = -1;
  double alt_lo_km = 0.0;
  double alt_hi_km = 0.0;
  double inc_lo_deg = 0.0;
  double inc_hi_deg = 0.0;
};

// Volume of the spherical-segment shell swept by orbits in the site's
// inclination range: V = 4*pi*sin(i_eff)*[(r+dr)^3 - r^3]/3, where i_eff is
// pi/2 when the bin straddles 90 deg and (pi - inc_lo) when both edges lie
// above 90 deg.
double node_volume_km3(const OrbitSite& site, double r_earth_km = kEarthRadiusKm);

enum class Placement { InDomain, Reentered, Escaped };

struct SiteLookup {
  Placement placement = Placement::InDomain;
  int site_id = -1;  // valid only when placement == InDomain
};

// Regular grid tiling [alt_min, alt_max] x [0, 180] deg.
// Sites are numbered shell-major: site_id = shell * n_inc_bins + inc_bin.
class SiteGrid {
 public:
  SiteGrid(double alt_min_km, double alt_max_km, double shell_km, double inc_bin_deg,
           double r_earth_km = kEarthRadiusKm);

  int n_shells() const { return n_shells_; }
  int n_inc_bins() const { return n_inc_bins_; }
  int n_sites() const { return n_shells_ * n_inc_bins_; }

  const OrbitSite& site(int site_id) const { return sites_[static_cast<std::size_t>(site_id)]; }
  int site_id(int shell, int inc_bin) const { return shell * n_inc_bins_ + inc_bin; }
  int shell_of(int site_id) const { return site_id / n_inc_bins_; }
  int inc_bin_of(int site_id) const { return site_id % n_inc_bins_; }

  double alt_min_km() const { return alt_min_km_; }
  double alt_max_km() const { return alt_max_km_; }
  double shell_km() const { return shell_km_; }
  double inc_bin_deg() const { return inc_bin_deg_; }
  double r_earth_km() const { return r_earth_km_; }

  // Shell index for an altitude; -1 below the domain floor, n_shells above
  // the ceiling. The top shell is closed at alt_max.
  int shell_index(double alt_km) const;
  int inc_bin_index(double inc_deg) const;  // clamped into [0, n_inc_bins)

  double shell_lo_radius_km(int shell) const { return r_earth_km_ + alt_min_km_ + shell * shell_km_; }
  double shell_mid_radius_km(int shell) const { return shell_lo_radius_km(shell) + 0.5 * shell_km_; }
  double shell_mid_alt_km(int shell) const { return alt_min_km_ + (shell + 0.5) * shell_km_; }

  // Bins a semi-major axis / inclination pair. Out-of-domain values are a
  // labeled result, not a failure.
  SiteLookup site_of(double a_km, double inc_deg) const;

  double volume_km3(int site_id) const { return volumes_[static_cast<std::size_t>(site_id)]; }

 private:
  double alt_min_km_, alt_max_km_, shell_km_, inc_bin_deg_, r_earth_km_;
  int n_shells_, n_inc_bins_;
  std::vector<OrbitSite> sites_;
  std::vector<double> volumes_;
};

}  // namespace leonet
