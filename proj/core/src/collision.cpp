#include "leonet/collision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leonet {

namespace {

bool is_same_node(const Node& a, const Node& b) {
  return a.species == b.species && a.site_id == b.site_id;
}

double max_volume_km3(const Node& a, const Node& b, const SiteGrid& grid) {
  return std::max(grid.volume_km3(a.site_id), grid.volume_km3(b.site_id));
}

}  // namespace

NodeKinematics summarize(const Node& node) {
  NodeKinematics kin;
  kin.count = node.count();
  if (kin.count == 0) return kin;
  double sum_a = 0.0, sum_inc = 0.0;
  kin.min_radius_m = node.objects.front().radius_m;
  kin.max_radius_m = kin.min_radius_m;
  for (const SpaceObject& obj : node.objects) {
    const double d = obj.diameter_m();
    kin.sum_diameter_m += d;
    kin.sum_diameter2_m2 += d * d;
    sum_a += obj.a_km;
    sum_inc += obj.inc_deg;
    kin.min_radius_m = std::min(kin.min_radius_m, obj.radius_m);
    kin.max_radius_m = std::max(kin.max_radius_m, obj.radius_m);
  }
  kin.mean_a_km = sum_a / kin.count;
  kin.mean_inc_deg = sum_inc / kin.count;
  return kin;
}

double node_speed_km_s(const NodeKinematics& kin, double shell_mid_radius_km, double mu_km3_s2) {
  const double vis_viva = mu_km3_s2 * (2.0 / shell_mid_radius_km - 1.0 / kin.mean_a_km);
  return vis_viva > 0.0 ? std::sqrt(vis_viva) : 0.0;
}

double mean_relative_velocity_km_s(const Node& node_i, const Node& node_j, const SiteGrid& grid,
                                   double mu_km3_s2) {
  if (node_i.empty() || node_j.empty()) {
    throw std::invalid_argument("mean_relative_velocity: empty node has no defined rate");
  }
  const NodeKinematics ki = summarize(node_i);
  const NodeKinematics kj = summarize(node_j);
  const double vi = node_speed_km_s(ki, grid.shell_mid_radius_km(grid.shell_of(node_i.site_id)), mu_km3_s2);
  const double vj = node_speed_km_s(kj, grid.shell_mid_radius_km(grid.shell_of(node_j.site_id)), mu_km3_s2);
  const double cos_term = std::cos(ki.mean_inc_deg * kDegToRad) * std::cos(kj.mean_inc_deg * kDegToRad);
  const double dv2 = vi * vi + vj * vj - 2.0 * vi * vj * cos_term;
  return dv2 > 0.0 ? std::sqrt(dv2) : 0.0;
}

double avg_cross_section_self_km2(const NodeKinematics& kin) {
  const double n = kin.count;
  if (kin.count < 2) {
    throw std::invalid_argument("avg_cross_section_self: needs at least two objects");
  }
  const double sum_d = kin.sum_diameter_m;
  const double sum_d2 = kin.sum_diameter2_m2;
  const double sigma_m2 =
      kPi / (4.0 * (n * n - n)) * (2.0 * (n - 2.0) * sum_d2 + 2.0 * sum_d * sum_d);
  return sigma_m2 * kM2ToKm2;
}

double avg_cross_section_self_km2(const Node& node) {
  return avg_cross_section_self_km2(summarize(node));
}

double avg_cross_section_cross_km2(const NodeKinematics& ki, const NodeKinematics& kj) {
  if (ki.count == 0 || kj.count == 0) {
    throw std::invalid_argument("avg_cross_section_cross: empty node has no pairs");
  }
  const double ni = ki.count, nj = kj.count;
  const double sigma_m2 = kPi / (4.0 * ni * nj) *
                          (nj * ki.sum_diameter2_m2 + ni * kj.sum_diameter2_m2 +
                           2.0 * ki.sum_diameter_m * kj.sum_diameter_m);
  return sigma_m2 * kM2ToKm2;
}

double avg_cross_section_cross_km2(const Node& node_i, const Node& node_j) {
  return avg_cross_section_cross_km2(summarize(node_i), summarize(node_j));
}

double pair_relative_velocity_km_s(const NodeKinematics& ki, const NodeKinematics& kj,
                                   double r_mid_i_km, double r_mid_j_km, double mu_km3_s2) {
  const double vi = node_speed_km_s(ki, r_mid_i_km, mu_km3_s2);
  const double vj = node_speed_km_s(kj, r_mid_j_km, mu_km3_s2);
  const double cos_term = std::cos(ki.mean_inc_deg * kDegToRad) * std::cos(kj.mean_inc_deg * kDegToRad);
  const double dv2 = vi * vi + vj * vj - 2.0 * vi * vj * cos_term;
  return dv2 > 0.0 ? std::sqrt(dv2) : 0.0;
}

double pair_rate_per_day(const NodeKinematics& ki, const NodeKinematics& kj, bool self_pair,
                         double dv_km_s, double volume_km3) {
  if (self_pair) {
    if (ki.count < 2) return 0.0;
  } else if (ki.count == 0 || kj.count == 0) {
    return 0.0;
  }
  const double ni = ki.count;
  const double nj_eff = self_pair ? (ni - 1.0) / 2.0 : kj.count;
  const double sigma =
      self_pair ? avg_cross_section_self_km2(ki) : avg_cross_section_cross_km2(ki, kj);
  return ni * nj_eff * dv_km_s * sigma / volume_km3 * kSecondsPerDay;
}

double mean_collision_rate_per_day(const Node& node_i, const Node& node_j, const SiteGrid& grid,
                                   double mu_km3_s2) {
  const bool self = is_same_node(node_i, node_j);
  if (self) {
    if (node_i.count() < 2) return 0.0;
  } else if (node_i.empty() || node_j.empty()) {
    return 0.0;
  }
  const double dv = mean_relative_velocity_km_s(node_i, node_j, grid, mu_km3_s2);
  return pair_rate_per_day(summarize(node_i), summarize(node_j), self, dv,
                           max_volume_km3(node_i, node_j, grid));
}

std::int64_t sample_jump(double rate_per_day, double dt_days, JumpModifier modifier, double s_cam,
                         double kappa, Rng& rng) {
  if (!(rate_per_day >= 0.0)) throw std::invalid_argument("sample_jump: negative rate");
  if (!(dt_days > 0.0)) throw std::invalid_argument("sample_jump: dt must be > 0");
  double m = 1.0;
  switch (modifier) {
    case JumpModifier::Plain: m = 1.0; break;
    case JumpModifier::Cam: m = 1.0 - s_cam; break;
    case JumpModifier::Cam2: m = (1.0 - s_cam) * (1.0 - s_cam); break;
    case JumpModifier::Small: m = kappa; break;
  }
  return rng.poisson(m * rate_per_day * dt_days);
}

double PairSelectionMatrix::total() const {
  double sum = 0.0;
  for (double v : p) sum += v;
  return sum;
}

namespace {

struct BinSums {
  int count = 0;
  double sum_d = 0.0;
  double sum_d2 = 0.0;
};

// sigma over pairs drawn from two disjoint groups, in km^2 (cross form).
double sigma_cross_bins_km2(const BinSums& a, const BinSums& b) {
  const double m2 = kPi / (4.0 * a.count * b.count) *
                    (b.count * a.sum_d2 + a.count * b.sum_d2 + 2.0 * a.sum_d * b.sum_d);
  return m2 * kM2ToKm2;
}

// sigma over unordered pairs within one group, in km^2 (self form).
double sigma_self_bin_km2(const BinSums& a) {
  const double n = a.count;
  const double m2 =
      kPi / (4.0 * (n * n - n)) * (2.0 * (n - 2.0) * a.sum_d2 + 2.0 * a.sum_d * a.sum_d);
  return m2 * kM2ToKm2;
}

}  // namespace

PairSelectionMatrix build_pair_selection_matrix(const Node& node_i, const Node& node_j,
                                                int n_bins, double dt_days, const SiteGrid& grid,
                                                double mu_km3_s2) {
  if (n_bins < 1) throw std::invalid_argument("build_pair_selection_matrix: n_bins must be >= 1");
  PairSelectionMatrix m;
  m.n_bins = n_bins;
  m.self_pair = is_same_node(node_i, node_j);
  m.p.assign(static_cast<std::size_t>(n_bins) * n_bins, 0.0);
  m.members_i.assign(n_bins, {});
  m.members_j.assign(n_bins, {});
  if (node_i.empty() || node_j.empty()) return m;
  if (m.self_pair && node_i.count() < 2) return m;

  const NodeKinematics ki = summarize(node_i);
  const NodeKinematics kj = summarize(node_j);

  auto bin_of = [n_bins](double r, double lo, double hi) {
    const double width = hi - lo;
    if (width <= 0.0) return 0;
    int b = static_cast<int>((r - lo) / width * n_bins);
    return std::clamp(b, 0, n_bins - 1);
  };

  std::vector<BinSums> sums_i(n_bins), sums_j(n_bins);
  for (int q = 0; q < node_i.count(); ++q) {
    const SpaceObject& obj = node_i.objects[static_cast<std::size_t>(q)];
    const int b = bin_of(obj.radius_m, ki.min_radius_m, ki.max_radius_m);
    m.members_i[static_cast<std::size_t>(b)].push_back(q);
    sums_i[static_cast<std::size_t>(b)].count++;
    sums_i[static_cast<std::size_t>(b)].sum_d += obj.diameter_m();
    sums_i[static_cast<std::size_t>(b)].sum_d2 += obj.diameter_m() * obj.diameter_m();
  }
  if (m.self_pair) {
    m.members_j = m.members_i;
    sums_j = sums_i;
  } else {
    for (int q = 0; q < node_j.count(); ++q) {
      const SpaceObject& obj = node_j.objects[static_cast<std::size_t>(q)];
      const int b = bin_of(obj.radius_m, kj.min_radius_m, kj.max_radius_m);
      m.members_j[static_cast<std::size_t>(b)].push_back(q);
      sums_j[static_cast<std::size_t>(b)].count++;
      sums_j[static_cast<std::size_t>(b)].sum_d += obj.diameter_m();
      sums_j[static_cast<std::size_t>(b)].sum_d2 += obj.diameter_m() * obj.diameter_m();
    }
  }

  const double dv = mean_relative_velocity_km_s(node_i, node_j, grid, mu_km3_s2);
  const double volume = max_volume_km3(node_i, node_j, grid);

  for (int k = 0; k < n_bins; ++k) {
    for (int l = 0; l < n_bins; ++l) {
      const BinSums& a = sums_i[static_cast<std::size_t>(k)];
      const BinSums& b = sums_j[static_cast<std::size_t>(l)];
      if (a.count == 0 || b.count == 0) continue;
      double pairs, sigma;
      if (m.self_pair && k == l) {
        if (a.count < 2) continue;
        pairs = a.count * (a.count - 1.0) / 2.0;
        sigma = sigma_self_bin_km2(a);
      } else {
        pairs = static_cast<double>(a.count) * b.count;
        sigma = sigma_cross_bins_km2(a, b);
      }
      const double rate_per_day = pairs * dv * sigma / volume * kSecondsPerDay;
      m.p[static_cast<std::size_t>(k) * n_bins + l] = 1.0 - std::exp(-rate_per_day * dt_days);
    }
  }
  return m;
}

std::pair<int, int> select_colliding_pair(const PairSelectionMatrix& matrix, Rng& rng) {
  const double total = matrix.total();
  if (!(total > 0.0)) throw std::runtime_error("select_colliding_pair: no admissible bin pair");
  double u = rng.uniform() * total;
  int cell = static_cast<int>(matrix.p.size()) - 1;
  for (std::size_t idx = 0; idx < matrix.p.size(); ++idx) {
    u -= matrix.p[idx];
    if (u <= 0.0) {
      cell = static_cast<int>(idx);
      break;
    }
  }
  const int k = cell / matrix.n_bins;
  const int l = cell % matrix.n_bins;
  const auto& bucket_i = matrix.members_i[static_cast<std::size_t>(k)];
  const auto& bucket_j = matrix.members_j[static_cast<std::size_t>(l)];
  const int qi = bucket_i[static_cast<std::size_t>(rng.uniform_index(bucket_i.size()))];
  if (matrix.self_pair && k == l) {
    // Distinct draw without replacement.
    int qj = qi;
    while (qj == qi) {
      qj = bucket_j[static_cast<std::size_t>(rng.uniform_index(bucket_j.size()))];
    }
    return {qi, qj};
  }
  // Distinct bins of one node are disjoint, so the draws cannot alias.
  const int qj = bucket_j[static_cast<std::size_t>(rng.uniform_index(bucket_j.size()))];
  return {qi, qj};
}

}  // namespace leonet
