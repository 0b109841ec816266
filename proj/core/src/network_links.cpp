#include "leonet/network_links.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leonet/collision.hpp"

namespace leonet {

const char* link_kind_code(LinkKind kind) {
  switch (kind) {
    case LinkKind::Collision: return "C";
    case LinkKind::FragmentFlow: return "F";
    case LinkKind::Decay: return "D";
    case LinkKind::SmallCollision: return "SC";
    case LinkKind::Pmd: return "PMD";
  }
  return "?";
}

double link_probability(double chi_per_day, double dt_days) {
  if (!(chi_per_day >= 0.0)) throw std::invalid_argument("link_probability: chi must be >= 0");
  return 1.0 - std::exp(-chi_per_day * dt_days);
}

const FlowTensor::Row* FlowTensor::row(int site_i, int site_l) const {
  const auto it = rows_.find({site_i, site_l});
  return it == rows_.end() ? nullptr : &it->second;
}

double FlowTensor::fraction(int site_i, int site_l, int dest_site) const {
  const Row* r = row(site_i, site_l);
  if (!r) return 0.0;
  for (const auto& [site, frac] : r->dest_fractions) {
    if (site == dest_site) return frac;
  }
  return 0.0;
}

void FlowTensor::set_row(int site_i, int site_l, Row row) {
  rows_[{site_i, site_l}] = std::move(row);
}

void FlowTensor::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("flow tensor: cannot open " + path);
  out << "site_i,site_l,dest_site,fraction\n";
  char buf[96];
  for (const auto& [key, row] : rows_) {
    for (const auto& [dest, frac] : row.dest_fractions) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.12g\n", key.first, key.second, dest, frac);
      out << buf;
    }
    if (row.reentered > 0.0) {
      std::snprintf(buf, sizeof(buf), "%d,%d,-1,%.12g\n", key.first, key.second, row.reentered);
      out << buf;
    }
    if (row.escaped > 0.0) {
      std::snprintf(buf, sizeof(buf), "%d,%d,-2,%.12g\n", key.first, key.second, row.escaped);
      out << buf;
    }
  }
}

FlowTensor FlowTensor::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("flow tensor: cannot open " + path);
  FlowTensor tensor;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    int vals[3];
    for (int& v : vals) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("flow tensor: bad row " + line);
      v = std::stoi(cell);
    }
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("flow tensor: bad row " + line);
    const double frac = std::stod(cell);
    Row& row = tensor.rows_[{vals[0], vals[1]}];
    if (vals[2] == -1) row.reentered = frac;
    else if (vals[2] == -2) row.escaped = frac;
    else row.dest_fractions.emplace_back(vals[2], frac);
  }
  return tensor;
}

FlowTensor precompute_flow_tensor(const SiteGrid& grid, const SimConfig& config,
                                  const BreakupModelParams& params, Rng& rng,
                                  const FlowTensorOptions& options) {
  FlowTensor tensor;
  SpaceObject reference;
  reference.species = Species::NonManoeuvrable;
  reference.mass_kg = options.reference_mass_kg;
  reference.radius_m = options.reference_diameter_m / 2.0;
  reference.area_m2 = options.reference_area_m2;
  reference.ecc = 0.0;

  for (int shell = 0; shell < grid.n_shells(); ++shell) {
    const double r_mid = grid.shell_mid_radius_km(shell);
    const double v_circ = std::sqrt(config.mu_km3_s2 / r_mid);
    for (int bi = 0; bi < grid.n_inc_bins(); ++bi) {
      for (int bl = bi; bl < grid.n_inc_bins(); ++bl) {
        const int site_i = grid.site_id(shell, bi);
        const int site_l = grid.site_id(shell, bl);
        const OrbitSite& s_i = grid.site(site_i);
        const OrbitSite& s_l = grid.site(site_l);
        SpaceObject parent_a = reference;
        parent_a.a_km = r_mid;
        parent_a.inc_deg = 0.5 * (s_i.inc_lo_deg + s_i.inc_hi_deg);
        SpaceObject parent_b = reference;
        parent_b.a_km = r_mid;
        parent_b.inc_deg = 0.5 * (s_l.inc_lo_deg + s_l.inc_hi_deg);

        const double ci = std::cos(parent_a.inc_deg * kDegToRad);
        const double cl = std::cos(parent_b.inc_deg * kDegToRad);
        double dv = v_circ * std::sqrt(std::max(0.0, 2.0 * (1.0 - ci * cl)));
        if (!(dv > 0.0)) dv = 1e-3;  // coincident equatorial bins

        const int event_site =
            grid.volume_km3(site_i) <= grid.volume_km3(site_l) ? site_i : site_l;
        const CollisionEvent event = make_collision_event(parent_a, parent_b, dv, event_site);

        std::vector<double> dest(static_cast<std::size_t>(grid.n_sites()), 0.0);
        double reentered = 0.0, escaped = 0.0;
        Rng pair_rng = rng.fork((static_cast<std::uint64_t>(site_i) << 32) ^
                                static_cast<std::uint64_t>(site_l));
        for (int rep = 0; rep < options.repetitions; ++rep) {
          const FragmentBatch batch = synthesize_fragments(event, config.lc_min_m, params, grid,
                                                           config.mu_km3_s2, pair_rng, 1);
          const FlowAssignment flows = assign_fragment_flows(batch, grid, pair_rng);
          const double total =
              static_cast<double>(batch.fragments.size()) + static_cast<double>(batch.unbound_count);
          if (!(total > 0.0)) continue;
          for (const auto& [site, count] : flows.site_counts) {
            dest[static_cast<std::size_t>(site)] += static_cast<double>(count) / total;
          }
          reentered += static_cast<double>(flows.reentered) / total;
          escaped += static_cast<double>(flows.escaped) / total;
        }
        FlowTensor::Row row;
        for (int site = 0; site < grid.n_sites(); ++site) {
          const double frac = dest[static_cast<std::size_t>(site)] / options.repetitions;
          if (frac > 0.0) row.dest_fractions.emplace_back(site, frac);
        }
        row.reentered = reentered / options.repetitions;
        row.escaped = escaped / options.repetitions;
        tensor.set_row(site_i, site_l, row);
        if (site_l != site_i) tensor.set_row(site_l, site_i, row);
      }
    }
  }
  return tensor;
}

namespace {

double cam_factor(Species a, Species b, double s_cam) {
  double factor = 1.0;
  if (a == Species::Payload) factor *= 1.0 - s_cam;
  if (b == Species::Payload) factor *= 1.0 - s_cam;
  return factor;
}

}  // namespace

LinkSet compute_link_rates(const NetworkState& state, const SimConfig& config,
                           const DensityModel& density, const FlowTensor& tensor) {
  const SiteGrid& grid = state.grid();
  LinkSet out;
  out.n_nodes = state.n_nodes();
  out.dt_days = config.dt_days;

  std::vector<NodeKinematics> kin(static_cast<std::size_t>(state.n_nodes()));
  for (int idx = 0; idx < state.n_nodes(); ++idx) {
    if (!state.node(idx).empty()) kin[static_cast<std::size_t>(idx)] = summarize(state.node(idx));
  }

  auto emit = [&](int src, int dst, LinkKind kind, double chi) {
    if (!(chi > 0.0)) return;
    out.links.push_back({src, dst, kind, chi, link_probability(chi, config.dt_days)});
  };

  // Collision (C), fragment-flow (F) and small-collision (SC) edges from the
  // shell-sharing pair rates.
  std::map<std::pair<int, int>, double> frag_flow;   // (src node, dest F node) -> chi
  std::vector<double> sc_rate(static_cast<std::size_t>(state.n_nodes()), 0.0);

  std::vector<int> shell_nodes;
  for (int shell = 0; shell < grid.n_shells(); ++shell) {
    shell_nodes.clear();
    for (int bin = 0; bin < grid.n_inc_bins(); ++bin) {
      const int site = grid.site_id(shell, bin);
      for (Species sp : kAllSpecies) {
        const int idx = state.node_index(sp, site);
        if (kin[static_cast<std::size_t>(idx)].count > 0) shell_nodes.push_back(idx);
      }
    }
    const double r_mid = grid.shell_mid_radius_km(shell);
    for (std::size_t ai = 0; ai < shell_nodes.size(); ++ai) {
      for (std::size_t bi = ai; bi < shell_nodes.size(); ++bi) {
        const int na = shell_nodes[ai];
        const int nb = shell_nodes[bi];
        const bool self = na == nb;
        const Node& node_a = state.node(na);
        const Node& node_b = state.node(nb);
        const NodeKinematics& ka = kin[static_cast<std::size_t>(na)];
        const NodeKinematics& kb = kin[static_cast<std::size_t>(nb)];
        const double volume =
            std::max(grid.volume_km3(node_a.site_id), grid.volume_km3(node_b.site_id));
        const double dv = pair_relative_velocity_km_s(ka, kb, r_mid, r_mid, config.mu_km3_s2);
        const double tau = pair_rate_per_day(ka, kb, self, dv, volume);
        if (!(tau > 0.0)) continue;
        const double tau_star = tau * cam_factor(node_a.species, node_b.species, config.s_cam);

        const bool pf_pair = (node_a.species == Species::Payload && node_b.species == Species::Fragment) ||
                             (node_a.species == Species::Fragment && node_b.species == Species::Payload);
        double chi_c = tau_star;
        if (pf_pair) chi_c += config.kappa_small * tau;
        emit(na, nb, LinkKind::Collision, chi_c);
        if (!self) emit(nb, na, LinkKind::Collision, chi_c);

        // Small collisions: in-site P -> N transition rate.
        if (pf_pair && config.kappa_small > 0.0) {
          const int p_node = node_a.species == Species::Payload ? na : nb;
          sc_rate[static_cast<std::size_t>(p_node)] += config.kappa_small * tau;
        }

        // Fragment flows through the tensor, from both endpoints.
        const FlowTensor::Row* row_ab = tensor.row(node_a.site_id, node_b.site_id);
        if (row_ab && tau_star > 0.0) {
          for (const auto& [dest_site, frac] : row_ab->dest_fractions) {
            const int dest_node = state.node_index(Species::Fragment, dest_site);
            frag_flow[{na, dest_node}] += tau_star * frac;
            if (!self) frag_flow[{nb, dest_node}] += tau_star * frac;
          }
        }
      }
    }
  }
  for (const auto& [key, chi] : frag_flow) {
    emit(key.first, key.second, LinkKind::FragmentFlow, chi);
  }
  for (int idx = 0; idx < state.n_nodes(); ++idx) {
    if (sc_rate[static_cast<std::size_t>(idx)] > 0.0) {
      const int n_node =
          state.node_index(Species::NonManoeuvrable, state.node(idx).site_id);
      emit(idx, n_node, LinkKind::SmallCollision, sc_rate[static_cast<std::size_t>(idx)]);
    }
  }

  // Decay edges: expected flows from the deterministic drag map and the
  // residence weights (no sampling, so snapshots are reproducible).
  {
    const double dt_s = config.dt_days * kSecondsPerDay;
    std::map<std::pair<int, int>, double> decay_flow;
    ResidenceWeights weights;
    for (int idx = 0; idx < state.n_nodes(); ++idx) {
      const Node& node = state.node(idx);
      if (node.empty()) continue;
      const int shell = grid.shell_of(node.site_id);
      const double rho = density.density_kg_m3(grid.shell_mid_alt_km(shell), state.epoch_years);
      for (const SpaceObject& obj : node.objects) {
        const DragResult dragged = drag_step(obj.a_km, obj.ecc, obj.cd, obj.area_per_mass_m2_kg(),
                                             rho, dt_s, config.mu_km3_s2);
        if (dragged.reentered) continue;
        residence_weights(dragged.a_km, dragged.ecc, grid, weights);
        // Decay links connect adjacent shells only (same species, one shell
        // down); residence mass elsewhere is bookkeeping, not a link.
        const int dest_shell = shell - 1;
        if (dest_shell < 0) continue;
        if (dest_shell < weights.first_shell ||
            dest_shell >= weights.first_shell + static_cast<int>(weights.w.size())) {
          continue;
        }
        const int dest_site = grid.site_id(dest_shell, grid.inc_bin_index(obj.inc_deg));
        const int dest_node = state.node_index(obj.species, dest_site);
        if (dest_node != idx) {
          decay_flow[{idx, dest_node}] +=
              weights.w[static_cast<std::size_t>(dest_shell - weights.first_shell)];
        }
      }
    }
    for (const auto& [key, eps] : decay_flow) {
      emit(key.first, key.second, LinkKind::Decay, eps / config.dt_days);
    }
  }

  // PMD edges: expected failed-disposal transitions in the coming step.
  for (int site = 0; site < grid.n_sites(); ++site) {
    const int p_idx = state.node_index(Species::Payload, site);
    const Node& p_node = state.node(p_idx);
    if (p_node.empty()) continue;
    long expiring = 0;
    for (const SpaceObject& obj : p_node.objects) {
      if (obj.mission_elapsed_years + config.dt_years() >= config.mission_lifetime_years) {
        ++expiring;
      }
    }
    if (expiring == 0) continue;
    const double chi = config.gamma_pmd * static_cast<double>(expiring) / config.dt_days;
    emit(p_idx, state.node_index(Species::NonManoeuvrable, site), LinkKind::Pmd, chi);
  }

  return out;
}

LinkSet subnetwork(const LinkSet& links, double rho_link) {
  if (!(rho_link >= 0.0)) throw std::invalid_argument("subnetwork: rho must be >= 0");
  LinkSet out;
  out.n_nodes = links.n_nodes;
  out.dt_days = links.dt_days;
  for (const Link& link : links.links) {
    if (link.p > 0.0 && link.p >= rho_link) out.links.push_back(link);
  }
  return out;
}

NodeDegrees weighted_degrees(const LinkSet& links) {
  NodeDegrees degrees;
  degrees.in.assign(static_cast<std::size_t>(links.n_nodes), 0.0);
  degrees.out.assign(static_cast<std::size_t>(links.n_nodes), 0.0);
  // Parallel edges between one ordered pair collapse to the strongest event
  // probability (the F-node aggregation rule, applied uniformly).
  std::map<std::pair<int, int>, double> strength;
  for (const Link& link : links.links) {
    auto& p = strength[{link.src_node, link.dst_node}];
    p = std::max(p, link.p);
  }
  for (const auto& [key, p] : strength) {
    degrees.out[static_cast<std::size_t>(key.first)] += p;
    degrees.in[static_cast<std::size_t>(key.second)] += p;
  }
  return degrees;
}

}  // namespace leonet
