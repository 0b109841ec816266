#include "leonet/site_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace leonet {

double node_volume_km3(const OrbitSite& site, double r_earth_km) {
  const double inc_lo = site.inc_lo_deg * kDegToRad;
  const double inc_hi = site.inc_hi_deg * kDegToRad;
  double i_eff = inc_hi;
  if (inc_lo <= kPi / 2.0 && inc_hi >= kPi / 2.0) {
    i_eff = kPi / 2.0;
  } else if (inc_lo > kPi / 2.0) {
    i_eff = kPi - inc_lo;
  }
  const double r = r_earth_km + site.alt_lo_km;
  const double r_hi = r_earth_km + site.alt_hi_km;
  return 4.0 * kPi * std::sin(i_eff) * (r_hi * r_hi * r_hi - r * r * r) / 3.0;
}

SiteGrid::SiteGrid(double alt_min_km, double alt_max_km, double shell_km, double inc_bin_deg,
                   double r_earth_km)
    : alt_min_km_(alt_min_km),
      alt_max_km_(alt_max_km),
      shell_km_(shell_km),
      inc_bin_deg_(inc_bin_deg),
      r_earth_km_(r_earth_km) {
  if (!(alt_min_km > 0.0) || !(alt_max_km > alt_min_km)) {
    throw std::invalid_argument("SiteGrid: need 0 < alt_min < alt_max");
  }
  if (!(shell_km > 0.0) || !(inc_bin_deg > 0.0) || inc_bin_deg > 180.0) {
    throw std::invalid_argument("SiteGrid: invalid cell size");
  }
  n_shells_ = static_cast<int>(std::ceil((alt_max_km - alt_min_km) / shell_km - 1e-9));
  n_inc_bins_ = static_cast<int>(std::ceil(180.0 / inc_bin_deg - 1e-9));
  sites_.reserve(static_cast<std::size_t>(n_shells_) * n_inc_bins_);
  volumes_.reserve(sites_.capacity());
  for (int shell = 0; shell < n_shells_; ++shell) {
    for (int bin = 0; bin < n_inc_bins_; ++bin) {
      OrbitSite s;
      s.site_id = site_id(shell, bin);
      s.alt_lo_km = alt_min_km_ + shell * shell_km_;
      s.alt_hi_km = std::min(alt_max_km_, s.alt_lo_km + shell_km_);
      s.inc_lo_deg = bin * inc_bin_deg_;
      s.inc_hi_deg = std::min(180.0, s.inc_lo_deg + inc_bin_deg_);
      sites_.push_back(s);
      volumes_.push_back(node_volume_km3(s, r_earth_km_));
    }
  }
}

int SiteGrid::shell_index(double alt_km) const {
  if (alt_km < alt_min_km_) return -1;
  if (alt_km > alt_max_km_) return n_shells_;
  int idx = static_cast<int>(std::floor((alt_km - alt_min_km_) / shell_km_));
  if (idx >= n_shells_) idx = n_shells_ - 1;  // alt == alt_max joins the top shell
  return idx;
}

int SiteGrid::inc_bin_index(double inc_deg) const {
  if (inc_deg <= 0.0) return 0;
  int idx = static_cast<int>(std::floor(inc_deg / inc_bin_deg_));
  if (idx >= n_inc_bins_) idx = n_inc_bins_ - 1;
  return idx;
}

SiteLookup SiteGrid::site_of(double a_km, double inc_deg) const {
  const double alt = a_km - r_earth_km_;
  const int shell = shell_index(alt);
  if (shell < 0) return {Placement::Reentered, -1};
  if (shell >= n_shells_) return {Placement::Escaped, -1};
  return {Placement::InDomain, site_id(shell, inc_bin_index(inc_deg))};
}

}  // namespace leonet
