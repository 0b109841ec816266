#include "leonet/breakup.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leonet {

std::pair<bool, double> classify_collision(const SpaceObject& a, const SpaceObject& b,
                                           double dv_km_s) {
  if (!(a.mass_kg > 0.0) || !(b.mass_kg > 0.0) || !(dv_km_s > 0.0)) {
    throw std::invalid_argument("classify_collision: masses and dv must be positive");
  }
  const double m_small = std::min(a.mass_kg, b.mass_kg);
  const double m_large = std::max(a.mass_kg, b.mass_kg);
  const double dv_m_s = dv_km_s * 1000.0;
  const double emr_j_per_g = 0.5 * m_small * dv_m_s * dv_m_s / (m_large * 1000.0);
  const bool catastrophic = emr_j_per_g >= kCatastrophicThresholdJPerG;
  const double mass = catastrophic ? a.mass_kg + b.mass_kg : m_small * dv_km_s * dv_km_s;
  return {catastrophic, mass};
}

std::int64_t fragment_count(double mass_kg, double lc_m) {
  if (!(mass_kg > 0.0) || !(lc_m > 0.0)) {
    throw std::invalid_argument("fragment_count: mass and lc must be positive");
  }
  const double zeta = 0.1 * std::pow(mass_kg, 0.75) * std::pow(lc_m, -1.71);
  return static_cast<std::int64_t>(std::floor(zeta));
}

CollisionEvent make_collision_event(const SpaceObject& a, const SpaceObject& b, double dv_km_s,
                                    int site_id) {
  CollisionEvent ev;
  ev.parent_a = a;
  ev.parent_b = b;
  ev.dv_km_s = dv_km_s;
  ev.site_id = site_id;
  const auto [catastrophic, mass] = classify_collision(a, b, dv_km_s);
  ev.catastrophic = catastrophic;
  ev.breakup_mass_kg = mass;
  return ev;
}

double PiecewiseLinear::operator()(double x) const {
  if (pts.empty()) throw std::logic_error("PiecewiseLinear: empty");
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (x <= pts[i].first) {
      const auto& [x0, y0] = pts[i - 1];
      const auto& [x1, y1] = pts[i];
      const double t = (x - x0) / (x1 - x0);
      return y0 + t * (y1 - y0);
    }
  }
  return pts.back().second;
}

BreakupModelParams BreakupModelParams::builtin() {
  BreakupModelParams p;
  p.rocket_body.alpha = {{{-1.4, 1.0}, {0.0, 0.5}}};
  p.rocket_body.mu1 = {{{-0.5, -0.45}, {0.0, -0.9}}};
  p.rocket_body.sigma1 = {{{0.0, 0.55}}};
  p.rocket_body.mu2 = {{{0.0, -0.9}}};
  p.rocket_body.sigma2 = {{{-1.0, 0.28}, {0.1, 0.1}}};
  p.spacecraft.alpha = {{{-1.95, 0.0}, {0.55, 1.0}}};
  p.spacecraft.mu1 = {{{-1.1, -0.6}, {0.0, -0.95}}};
  p.spacecraft.sigma1 = {{{-1.3, 0.1}, {-0.3, 0.3}}};
  p.spacecraft.mu2 = {{{-0.7, -1.2}, {-0.1, -2.0}}};
  p.spacecraft.sigma2 = {{{-0.5, 0.5}, {-0.3, 0.3}}};
  p.soc_mu = {{{-1.75, -0.3}, {-1.25, -1.0}}};
  p.soc_sigma = {{{-3.5, 0.2}, {0.0, 0.66655}}};
  return p;
}

namespace {

void write_pl(std::ostream& out, const char* key, const PiecewiseLinear& pl) {
  out << key << " =";
  for (const auto& [x, y] : pl.pts) out << ' ' << x << ':' << y;
  out << '\n';
}

PiecewiseLinear parse_pl(const std::string& value) {
  PiecewiseLinear pl;
  std::istringstream ss(value);
  std::string tok;
  while (ss >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::runtime_error("breakup params: bad pair " + tok);
    pl.pts.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
  }
  if (pl.pts.empty()) throw std::runtime_error("breakup params: empty piecewise list");
  return pl;
}

}  // namespace

void BreakupModelParams::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("breakup params: cannot open " + path);
  out.precision(17);
  out << "# fragment area-to-mass and ejection-velocity parameters\n"
      << "# piecewise entries are x:y pairs over log10(length_m), clamped linear\n";
  out << "[rocket_body]\n";
  write_pl(out, "alpha", rocket_body.alpha);
  write_pl(out, "mu1", rocket_body.mu1);
  write_pl(out, "sigma1", rocket_body.sigma1);
  write_pl(out, "mu2", rocket_body.mu2);
  write_pl(out, "sigma2", rocket_body.sigma2);
  out << "[spacecraft]\n";
  write_pl(out, "alpha", spacecraft.alpha);
  write_pl(out, "mu1", spacecraft.mu1);
  write_pl(out, "sigma1", spacecraft.sigma1);
  write_pl(out, "mu2", spacecraft.mu2);
  write_pl(out, "sigma2", spacecraft.sigma2);
  out << "[small_object]\n";
  write_pl(out, "mu", soc_mu);
  write_pl(out, "sigma", soc_sigma);
  out << "[shape]\n"
      << "bridge_lo_m = " << bridge_lo_m << "\n"
      << "bridge_hi_m = " << bridge_hi_m << "\n"
      << "area_coef_small = " << area_coef_small << "\n"
      << "area_exp_small = " << area_exp_small << "\n"
      << "area_coef_large = " << area_coef_large << "\n"
      << "area_exp_large = " << area_exp_large << "\n"
      << "length_break_m = " << length_break_m << "\n"
      << "dv_mu_slope = " << dv_mu_slope << "\n"
      << "dv_mu_offset = " << dv_mu_offset << "\n"
      << "dv_sigma = " << dv_sigma << "\n";
}

BreakupModelParams BreakupModelParams::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("breakup params: cannot open " + path);
  BreakupModelParams p = builtin();
  std::string line, section;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      section = line.substr(1, line.find(']') - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("breakup params: bad line " + line);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(eq + 1);

    auto set_family = [&](AmFamily& fam) {
      if (key == "alpha") fam.alpha = parse_pl(value);
      else if (key == "mu1") fam.mu1 = parse_pl(value);
      else if (key == "sigma1") fam.sigma1 = parse_pl(value);
      else if (key == "mu2") fam.mu2 = parse_pl(value);
      else if (key == "sigma2") fam.sigma2 = parse_pl(value);
      else throw std::runtime_error("breakup params: unknown key " + key);
    };
    if (section == "rocket_body") {
      set_family(p.rocket_body);
    } else if (section == "spacecraft") {
      set_family(p.spacecraft);
    } else if (section == "small_object") {
      if (key == "mu") p.soc_mu = parse_pl(value);
      else if (key == "sigma") p.soc_sigma = parse_pl(value);
      else throw std::runtime_error("breakup params: unknown key " + key);
    } else if (section == "shape") {
      const double v = std::stod(value);
      if (key == "bridge_lo_m") p.bridge_lo_m = v;
      else if (key == "bridge_hi_m") p.bridge_hi_m = v;
      else if (key == "area_coef_small") p.area_coef_small = v;
      else if (key == "area_exp_small") p.area_exp_small = v;
      else if (key == "area_coef_large") p.area_coef_large = v;
      else if (key == "area_exp_large") p.area_exp_large = v;
      else if (key == "length_break_m") p.length_break_m = v;
      else if (key == "dv_mu_slope") p.dv_mu_slope = v;
      else if (key == "dv_mu_offset") p.dv_mu_offset = v;
      else if (key == "dv_sigma") p.dv_sigma = v;
      else throw std::runtime_error("breakup params: unknown key " + key);
    } else {
      throw std::runtime_error("breakup params: unknown section " + section);
    }
  }
  return p;
}

double BreakupModelParams::mean_area_m2(double length_m) const {
  if (length_m < length_break_m) return area_coef_small * std::pow(length_m, area_exp_small);
  return area_coef_large * std::pow(length_m, area_exp_large);
}

double BreakupModelParams::sample_chi(double length_m, bool rocket_body_parent, Rng& rng) const {
  const double lambda_c = std::log10(length_m);
  auto draw_large = [&]() {
    const AmFamily& fam = rocket_body_parent ? rocket_body : spacecraft;
    const double alpha = fam.alpha(lambda_c);
    if (rng.uniform() < alpha) return rng.normal(fam.mu1(lambda_c), fam.sigma1(lambda_c));
    return rng.normal(fam.mu2(lambda_c), fam.sigma2(lambda_c));
  };
  auto draw_small = [&]() { return rng.normal(soc_mu(lambda_c), soc_sigma(lambda_c)); };

  if (length_m >= bridge_hi_m) return draw_large();
  if (length_m <= bridge_lo_m) return draw_small();
  const double w = (length_m - bridge_lo_m) / (bridge_hi_m - bridge_lo_m);
  return w * draw_large() + (1.0 - w) * draw_small();
}

double BreakupModelParams::sample_ejection_dv_m_s(double chi, Rng& rng) const {
  const double nu = rng.normal(dv_mu_slope * chi + dv_mu_offset, dv_sigma);
  return std::pow(10.0, nu);
}

double FragmentBatch::total_mass_kg() const {
  double total = unbound_mass_kg;
  for (const SpaceObject& f : fragments) total += f.mass_kg;
  return total;
}

namespace {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};
Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

// Radial and transverse unit vectors of an orbit with inclination i, RAAN O
// at argument of latitude u.
void orbit_frame(double inc_rad, double raan_rad, double arg_lat_rad, Vec3& r_hat, Vec3& t_hat) {
  const double ci = std::cos(inc_rad), si = std::sin(inc_rad);
  const double co = std::cos(raan_rad), so = std::sin(raan_rad);
  const double cu = std::cos(arg_lat_rad), su = std::sin(arg_lat_rad);
  r_hat = {co * cu - so * su * ci, so * cu + co * su * ci, su * si};
  t_hat = {-co * su - so * cu * ci, -so * su + co * cu * ci, cu * si};
}

Vec3 isotropic_unit(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

struct ParentState {
  Vec3 r_km;
  Vec3 v_km_s;
};

// Parent position/velocity at the radius where the collision happens,
// with uniformly random RAAN and node-crossing phase.
ParentState parent_state_at_radius(const SpaceObject& parent, double r_km, double mu, Rng& rng) {
  const double a = parent.a_km;
  const double e = parent.ecc;
  const double p = a * (1.0 - e * e);
  const double r = std::clamp(r_km, a * (1.0 - e) + 1e-9, a * (1.0 + e) - 1e-9);
  double nu = 0.0;
  if (e > 1e-12) {
    nu = std::acos(std::clamp((p / r - 1.0) / e, -1.0, 1.0));
    if (rng.uniform() < 0.5) nu = -nu;  // ascending or descending through the shell
  } else {
    nu = rng.uniform(0.0, 2.0 * kPi);
  }
  const double raan = rng.uniform(0.0, 2.0 * kPi);
  const double arg_periapsis = rng.uniform(0.0, 2.0 * kPi);
  Vec3 r_hat, t_hat;
  orbit_frame(parent.inc_deg * kDegToRad, raan, arg_periapsis + nu, r_hat, t_hat);
  const double v_r = std::sqrt(mu / p) * e * std::sin(nu);
  const double v_t = std::sqrt(mu / p) * (1.0 + e * std::cos(nu));
  ParentState st;
  st.r_km = r * r_hat;
  st.v_km_s = v_r * r_hat + v_t * t_hat;
  return st;
}

}  // namespace

FragmentBatch synthesize_fragments(const CollisionEvent& event, double lc_m,
                                   const BreakupModelParams& params, const SiteGrid& grid,
                                   double mu_km3_s2, Rng& rng, std::int64_t first_object_id) {
  FragmentBatch batch;
  const std::int64_t n = fragment_count(event.breakup_mass_kg, lc_m);
  if (n <= 0) return batch;

  const SpaceObject& small =
      event.parent_a.mass_kg <= event.parent_b.mass_kg ? event.parent_a : event.parent_b;

  const double shell_mid_r = grid.shell_mid_radius_km(grid.shell_of(event.site_id));
  const double mass_budget_kg =
      event.catastrophic ? event.parent_a.mass_kg + event.parent_b.mass_kg : small.mass_kg;

  // Size spectrum: density is the derivative of the cumulative power law,
  // truncated to [lc, parent length].
  const double q = 1.71;
  auto sample_length = [&](double l_max) {
    if (l_max <= lc_m * (1.0 + 1e-12)) return lc_m;
    const double lo_pow = std::pow(lc_m, -q);
    const double hi_pow = std::pow(l_max, -q);
    const double u = rng.uniform();
    return std::pow(lo_pow - u * (lo_pow - hi_pow), -1.0 / q);
  };

  const double prob_from_a =
      event.catastrophic ? event.parent_a.mass_kg / (event.parent_a.mass_kg + event.parent_b.mass_kg)
                         : (event.parent_a.mass_kg <= event.parent_b.mass_kg ? 1.0 : 0.0);

  batch.fragments.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    const bool from_a = rng.uniform() < prob_from_a;
    const SpaceObject& parent = from_a ? event.parent_a : event.parent_b;
    const double l_max = event.catastrophic ? parent.diameter_m() : small.diameter_m();

    const double length = sample_length(std::max(l_max, lc_m));
    const double chi = params.sample_chi(length, parent.species == Species::UpperStage, rng);
    const double area = params.mean_area_m2(length);
    const double mass = area / std::pow(10.0, chi);
    const double dv_km_s = params.sample_ejection_dv_m_s(chi, rng) / 1000.0;

    const ParentState st = parent_state_at_radius(parent, shell_mid_r, mu_km3_s2, rng);
    const Vec3 v_new = st.v_km_s + dv_km_s * isotropic_unit(rng);
    const double r = norm(st.r_km);
    const double v2 = dot(v_new, v_new);
    const double energy = 0.5 * v2 - mu_km3_s2 / r;
    if (energy >= 0.0) {
      batch.unbound_count++;
      batch.unbound_mass_kg += mass;
      continue;
    }
    const double a_new = -mu_km3_s2 / (2.0 * energy);
    const Vec3 h = cross(st.r_km, v_new);
    const double h_mag = norm(h);
    const double ecc2 = 1.0 + 2.0 * energy * h_mag * h_mag / (mu_km3_s2 * mu_km3_s2);
    const double ecc = std::sqrt(std::max(0.0, ecc2));
    const double inc_deg = std::acos(std::clamp(h.z / h_mag, -1.0, 1.0)) * kRadToDeg;

    SpaceObject frag;
    frag.object_id = first_object_id++;
    frag.species = Species::Fragment;
    frag.a_km = a_new;
    frag.ecc = std::min(ecc, 0.999999);
    frag.inc_deg = inc_deg;
    frag.mass_kg = mass;
    frag.radius_m = length / 2.0;
    frag.area_m2 = area;
    frag.cd = 2.2;
    batch.fragments.push_back(frag);
  }

  // Mass fix-up against the budget.
  double total = batch.total_mass_kg();
  if (total > mass_budget_kg && total > 0.0) {
    const double scale = mass_budget_kg / total;
    for (SpaceObject& f : batch.fragments) f.mass_kg *= scale;
    batch.unbound_mass_kg *= scale;
  } else if (event.catastrophic && total < mass_budget_kg) {
    const double deficit = mass_budget_kg - total;
    if (!batch.fragments.empty()) {
      std::int64_t spread = 2 + static_cast<std::int64_t>(rng.uniform_index(7));  // 2..8
      spread = std::min<std::int64_t>(spread, static_cast<std::int64_t>(batch.fragments.size()));
      std::vector<std::size_t> chosen;
      while (chosen.size() < static_cast<std::size_t>(spread)) {
        const std::size_t pick = rng.uniform_index(batch.fragments.size());
        if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) chosen.push_back(pick);
      }
      for (std::size_t idx : chosen) {
        batch.fragments[idx].mass_kg += deficit / static_cast<double>(spread);
      }
    } else {
      batch.unbound_mass_kg += deficit;
    }
  }
  return batch;
}

FlowAssignment assign_fragment_flows(const FragmentBatch& batch, const SiteGrid& grid, Rng& rng) {
  FlowAssignment out;
  out.dest_site.reserve(batch.fragments.size());
  std::vector<long> counts(static_cast<std::size_t>(grid.n_sites()), 0);
  for (const SpaceObject& frag : batch.fragments) {
    const RouteResult dest = route_by_residence(frag.a_km, frag.ecc, frag.inc_deg, grid, rng);
    if (dest.placement == Placement::Reentered) {
      out.dest_site.push_back(-1);
      out.reentered++;
    } else if (dest.placement == Placement::Escaped) {
      out.dest_site.push_back(-2);
      out.escaped++;
    } else {
      out.dest_site.push_back(dest.site_id);
      counts[static_cast<std::size_t>(dest.site_id)]++;
      out.in_domain++;
    }
  }
  out.escaped += batch.unbound_count;
  for (int site = 0; site < grid.n_sites(); ++site) {
    if (counts[static_cast<std::size_t>(site)] > 0) {
      out.site_counts.emplace_back(site, counts[static_cast<std::size_t>(site)]);
    }
  }
  return out;
}

}  // namespace leonet
