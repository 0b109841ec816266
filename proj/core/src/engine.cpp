#include "leonet/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace leonet {

void StepReport::add(int node, Cause cause, long delta) {
  if (delta == 0) return;
  auto& arr = node_deltas[node];
  arr[static_cast<std::size_t>(cause)] += delta;
}

namespace {

struct PendingEvent {
  CollisionEvent event;
  int node_a = -1;
  int node_b = -1;
};

int payload_endpoints(Species a, Species b) {
  return (a == Species::Payload ? 1 : 0) + (b == Species::Payload ? 1 : 0);
}

// Removes the object at the given index, preserving order so later draws in
// the same step stay reproducible.
SpaceObject take_object(Node& node, int index) {
  SpaceObject obj = node.objects[static_cast<std::size_t>(index)];
  node.objects.erase(node.objects.begin() + index);
  return obj;
}

void sample_collisions(NetworkState& state, const SimConfig& config,
                       const std::vector<NodeKinematics>& kin, Rng& rng, StepReport& report,
                       std::vector<PendingEvent>& events) {
  const SiteGrid& grid = state.grid();
  const double dt = config.dt_days;
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
        const NodeKinematics& ka = kin[static_cast<std::size_t>(na)];
        const NodeKinematics& kb = kin[static_cast<std::size_t>(nb)];
        if (self && ka.count < 2) continue;
        const Node& node_a_snapshot = state.node(na);
        const Node& node_b_snapshot = state.node(nb);
        const double volume = std::max(grid.volume_km3(node_a_snapshot.site_id),
                                       grid.volume_km3(node_b_snapshot.site_id));
        const double dv = pair_relative_velocity_km_s(ka, kb, r_mid, r_mid, config.mu_km3_s2);
        const double tau = pair_rate_per_day(ka, kb, self, dv, volume);
        if (!(tau > 0.0)) continue;
        const int npay = payload_endpoints(node_a_snapshot.species, node_b_snapshot.species);
        double factor = 1.0;
        for (int p = 0; p < npay; ++p) factor *= 1.0 - config.s_cam;
        const std::int64_t n_coll = rng.poisson(factor * tau * dt);
        for (std::int64_t c = 0; c < n_coll; ++c) {
          Node& node_a = state.node(na);
          Node& node_b = state.node(nb);
          if (self && node_a.count() < 2) break;
          if (!self && (node_a.empty() || node_b.empty())) break;
          const PairSelectionMatrix matrix = build_pair_selection_matrix(
              node_a, node_b, config.n_size_bins, dt, grid, config.mu_km3_s2);
          if (!(matrix.total() > 0.0)) break;
          const auto [qa, qb] = select_colliding_pair(matrix, rng);
          const SpaceObject& obj_a = node_a.objects[static_cast<std::size_t>(qa)];
          const SpaceObject& obj_b = node_b.objects[static_cast<std::size_t>(qb)];
          const int event_site = grid.volume_km3(node_a.site_id) <= grid.volume_km3(node_b.site_id)
                                     ? node_a.site_id
                                     : node_b.site_id;
          PendingEvent pending;
          pending.event = make_collision_event(obj_a, obj_b, dv, event_site);
          pending.node_a = na;
          pending.node_b = nb;

          CollisionRecord record;
          record.species_a = node_a.species;
          record.species_b = node_b.species;
          record.site_a = node_a.site_id;
          record.site_b = node_b.site_id;
          record.dv_km_s = dv;
          record.catastrophic = pending.event.catastrophic;
          record.breakup_mass_kg = pending.event.breakup_mass_kg;

          // Catastrophic events destroy both parents; non-catastrophic ones
          // destroy only the smaller object while the target survives.
          const bool a_is_smaller = obj_a.mass_kg <= obj_b.mass_kg;
          record.removed_a = pending.event.catastrophic || a_is_smaller;
          record.removed_b = pending.event.catastrophic || !a_is_smaller;
          if (self) {
            const int hi = std::max(qa, qb);
            const int lo = std::min(qa, qb);
            const bool hi_removed = (hi == qa) ? record.removed_a : record.removed_b;
            const bool lo_removed = (lo == qa) ? record.removed_a : record.removed_b;
            if (hi_removed) take_object(node_a, hi);
            if (lo_removed) take_object(node_a, lo);
          } else {
            if (record.removed_a) take_object(node_a, qa);
            if (record.removed_b) take_object(node_b, qb);
          }
          report.add(na, Cause::CollisionLoss, record.removed_a ? -1 : 0);
          report.add(nb, Cause::CollisionLoss, record.removed_b ? -1 : 0);
          if (pending.event.catastrophic) {
            state.counters.catastrophic++;
          } else {
            state.counters.non_catastrophic++;
          }
          report.collisions.push_back(record);
          events.push_back(std::move(pending));
        }
      }
    }
  }
}

void sample_small_collisions(NetworkState& state, const SimConfig& config,
                             const std::vector<NodeKinematics>& kin, Rng& rng,
                             StepReport& report) {
  if (!(config.kappa_small > 0.0)) return;
  const SiteGrid& grid = state.grid();
  const double dt = config.dt_days;
  for (int shell = 0; shell < grid.n_shells(); ++shell) {
    const double r_mid = grid.shell_mid_radius_km(shell);
    for (int bin_p = 0; bin_p < grid.n_inc_bins(); ++bin_p) {
      const int p_idx = state.node_index(Species::Payload, grid.site_id(shell, bin_p));
      const NodeKinematics& kp = kin[static_cast<std::size_t>(p_idx)];
      if (kp.count == 0) continue;
      for (int bin_f = 0; bin_f < grid.n_inc_bins(); ++bin_f) {
        const int f_idx = state.node_index(Species::Fragment, grid.site_id(shell, bin_f));
        const NodeKinematics& kf = kin[static_cast<std::size_t>(f_idx)];
        if (kf.count == 0) continue;
        const double volume = std::max(grid.volume_km3(grid.site_id(shell, bin_p)),
                                       grid.volume_km3(grid.site_id(shell, bin_f)));
        const double dv = pair_relative_velocity_km_s(kp, kf, r_mid, r_mid, config.mu_km3_s2);
        const double tau = pair_rate_per_day(kp, kf, false, dv, volume);
        if (!(tau > 0.0)) continue;
        // Impacts by the 1-10 cm population: kappa times more frequent than
        // the trackable collisions, not reduced by CAM, and each one turns a
        // payload into a non-manoeuvrable satellite in the same site.
        std::int64_t hits = rng.poisson(config.kappa_small * tau * dt);
        Node& p_node = state.node(p_idx);
        const int n_site = state.node_index(Species::NonManoeuvrable, p_node.site_id);
        while (hits-- > 0 && !p_node.empty()) {
          const int pick = static_cast<int>(rng.uniform_index(p_node.objects.size()));
          SpaceObject obj = take_object(p_node, pick);
          obj.species = Species::NonManoeuvrable;
          state.node(n_site).objects.push_back(std::move(obj));
          state.counters.small++;
          report.small_collisions++;
          report.add(p_idx, Cause::SmallCollisionLoss, -1);
          report.add(n_site, Cause::SmallCollisionGain, +1);
        }
      }
    }
  }
}

void synthesize_events(NetworkState& state, const SimConfig& config, const Models& models,
                       std::vector<PendingEvent>& events, Rng& rng, StepReport& report) {
  const SiteGrid& grid = state.grid();
  for (std::size_t e = 0; e < events.size(); ++e) {
    PendingEvent& pending = events[e];
    CollisionRecord& record = report.collisions[e];
    const std::int64_t expected =
        fragment_count(pending.event.breakup_mass_kg, config.lc_min_m);
    const std::int64_t first_id = expected > 0 ? state.take_object_id_block(expected) : 0;
    FragmentBatch batch = synthesize_fragments(pending.event, config.lc_min_m, models.breakup,
                                               grid, config.mu_km3_s2, rng, first_id);
    const FlowAssignment flows = assign_fragment_flows(batch, grid, rng);
    for (std::size_t i = 0; i < batch.fragments.size(); ++i) {
      const int site = flows.dest_site[i];
      if (site < 0) continue;
      const int node = state.node_index(Species::Fragment, site);
      state.node(node).objects.push_back(batch.fragments[i]);
      report.add(node, Cause::FragmentGain, +1);
    }
    record.fragments_created = static_cast<long>(batch.fragments.size()) + batch.unbound_count;
    record.fragments_in_domain = flows.in_domain;
    record.fragments_reentered = flows.reentered;
    record.fragments_escaped = flows.escaped;
    state.reentered_total += flows.reentered;
    state.escaped_total += flows.escaped;
    report.reentered += flows.reentered;
    report.escaped += flows.escaped;
  }
}

void apply_pmd(NetworkState& state, const SimConfig& config, Rng& rng, StepReport& report) {
  const SiteGrid& grid = state.grid();
  const double dt_years = config.dt_years();
  for (int site = 0; site < grid.n_sites(); ++site) {
    const int p_idx = state.node_index(Species::Payload, site);
    Node& p_node = state.node(p_idx);
    if (p_node.empty()) continue;
    const int n_idx = state.node_index(Species::NonManoeuvrable, site);
    std::size_t keep = 0;
    for (std::size_t q = 0; q < p_node.objects.size(); ++q) {
      SpaceObject obj = p_node.objects[q];
      obj.mission_elapsed_years += dt_years;
      if (obj.mission_elapsed_years < config.mission_lifetime_years) {
        p_node.objects[keep++] = obj;
        continue;
      }
      report.pmd_expired++;
      // A failed disposal turns the payload into a non-manoeuvrable
      // satellite in the same site; a successful one removes it.
      if (rng.uniform() < config.gamma_pmd) {
        obj.species = Species::NonManoeuvrable;
        state.node(n_idx).objects.push_back(std::move(obj));
        report.pmd_failed++;
        report.add(p_idx, Cause::PmdFailLoss, -1);
        report.add(n_idx, Cause::PmdFailGain, +1);
      } else {
        report.add(p_idx, Cause::PmdRemoved, -1);
      }
    }
    p_node.objects.resize(keep);
  }
}

void apply_adr(NetworkState& state, const SimConfig& config, EngineCarry& carry,
               StepReport& report) {
  const double dt_years = config.dt_years();
  for (int s = 0; s < kNumSpecies; ++s) {
    const double rate = config.adr_per_year[static_cast<std::size_t>(s)];
    if (!(rate > 0.0)) continue;
    carry.adr_quota[static_cast<std::size_t>(s)] += rate * dt_years;
    long quota = static_cast<long>(std::floor(carry.adr_quota[static_cast<std::size_t>(s)]));
    if (quota <= 0) continue;
    carry.adr_quota[static_cast<std::size_t>(s)] -= static_cast<double>(quota);

    // Largest-mass-first across the species' nodes.
    std::vector<std::tuple<double, int, int>> candidates;  // (mass, node, index)
    for (int site = 0; site < state.grid().n_sites(); ++site) {
      const int idx = state.node_index(static_cast<Species>(s), site);
      const Node& node = state.node(idx);
      for (int q = 0; q < node.count(); ++q) {
        candidates.emplace_back(node.objects[static_cast<std::size_t>(q)].mass_kg, idx, q);
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return std::get<2>(a) > std::get<2>(b);
    });
    quota = std::min<long>(quota, static_cast<long>(candidates.size()));
    // Remove highest indices first within each node to keep indices valid.
    std::vector<std::pair<int, int>> picks;  // (node, index)
    for (long k = 0; k < quota; ++k) {
      picks.emplace_back(std::get<1>(candidates[static_cast<std::size_t>(k)]),
                         std::get<2>(candidates[static_cast<std::size_t>(k)]));
    }
    std::sort(picks.begin(), picks.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second > b.second;
    });
    for (const auto& [node_idx, obj_idx] : picks) {
      take_object(state.node(node_idx), obj_idx);
      report.add(node_idx, Cause::AdrRemoved, -1);
      report.adr_removed++;
    }
  }
}

void accumulate_cause_row(const NetworkState& state, const StepReport& report,
                          const ShellFlows& flows, CauseRow& row) {
  for (const CollisionRecord& rec : report.collisions) {
    const bool a_f = rec.species_a == Species::Fragment;
    const bool b_f = rec.species_b == Species::Fragment;
    const bool a_p = rec.species_a == Species::Payload;
    const bool b_p = rec.species_b == Species::Payload;
    const long f_removed = (a_f && rec.removed_a ? 1 : 0) + (b_f && rec.removed_b ? 1 : 0);
    const long p_removed = (a_p && rec.removed_a ? 1 : 0) + (b_p && rec.removed_b ? 1 : 0);
    if (a_f && b_f) {
      row.dF_FF += static_cast<double>(rec.fragments_in_domain - f_removed);
    } else if (a_p && b_p) {
      row.dF_PP += static_cast<double>(rec.fragments_in_domain);
      row.dP_PP -= static_cast<double>(p_removed);
    } else if ((a_p && b_f) || (a_f && b_p)) {
      row.dF_PF += static_cast<double>(rec.fragments_in_domain - f_removed);
      row.dP_PF -= static_cast<double>(p_removed);
    }
  }
  row.dP_PMD = -static_cast<double>(report.pmd_expired);
  const SiteGrid& grid = state.grid();
  for (int site = 0; site < grid.n_sites(); ++site) {
    const int idx = site * kNumSpecies + static_cast<int>(Species::Fragment);
    row.dF_decay += static_cast<double>(flows.eps_in[static_cast<std::size_t>(idx)] -
                                        flows.eps_out[static_cast<std::size_t>(idx)] -
                                        flows.reentered_per_node[static_cast<std::size_t>(idx)]);
  }
}

}  // namespace

StepReport step(NetworkState& state, const SimConfig& config, const Models& models, Rng& rng,
                EngineCarry* carry) {
  StepReport report;
  report.epoch_years = state.epoch_years;
  report.dt_days = config.dt_days;
  report.causes.epoch_years = state.epoch_years;
  report.causes.dt_years = config.dt_years();
  report.causes.x_fragments = static_cast<double>(state.count(Species::Fragment));
  report.causes.y_payloads = static_cast<double>(state.count(Species::Payload));

  // Rates use the start-of-step snapshot; pools shrink as events fire.
  std::vector<NodeKinematics> kin(static_cast<std::size_t>(state.n_nodes()));
  for (int idx = 0; idx < state.n_nodes(); ++idx) {
    if (!state.node(idx).empty()) kin[static_cast<std::size_t>(idx)] = summarize(state.node(idx));
  }

  std::vector<PendingEvent> events;
  sample_collisions(state, config, kin, rng, report, events);
  sample_small_collisions(state, config, kin, rng, report);
  synthesize_events(state, config, models, events, rng, report);
  apply_pmd(state, config, rng, report);

  EngineCarry local_carry;
  apply_adr(state, config, carry ? *carry : local_carry, report);

  const ShellFlows flows = compute_shell_flows(state, config, models.density, rng);
  for (const ShellFlows::Flow& f : flows.flows) {
    report.add(f.src_node, Cause::DecayOut, -f.count);
    report.add(f.dst_node, Cause::DecayIn, +f.count);
  }
  for (int idx = 0; idx < state.n_nodes(); ++idx) {
    const long r = flows.reentered_per_node[static_cast<std::size_t>(idx)];
    if (r > 0) report.add(idx, Cause::Reentered, -r);
  }
  const long reentered_now = static_cast<long>(flows.reentered.size());
  state.reentered_total += reentered_now;
  report.reentered += reentered_now;

  if (models.launch) {
    const InjectReport launched =
        inject_launches(state, state.epoch_years, config.dt_days, *models.launch, rng);
    for (const auto& [node, added] : launched.per_node) {
      report.add(node, Cause::LaunchGain, added);
    }
    report.launched = launched.total;
  }

  accumulate_cause_row(state, report, flows, report.causes);
  state.epoch_years += config.dt_years();
  return report;
}

EnsembleStats run_monte_carlo(const SimConfig& config,
                              const std::vector<SpaceObject>& initial_population,
                              const Models& models, int n_runs) {
  config.check();
  if (n_runs < 1) throw std::invalid_argument("run_monte_carlo: n_runs must be >= 1");
  auto grid = std::make_shared<SiteGrid>(config.alt_min_km, config.alt_max_km, config.shell_km,
                                         config.inc_bin_deg, config.r_earth_km);
  const int n_steps = config.n_steps();
  const int n_epochs = n_steps + 1;

  struct RunResult {
    std::vector<std::array<long, kNumSpecies>> counts;  // per epoch
    std::vector<long> cum_catastrophic;
    std::vector<long> cum_all;
    std::vector<CauseRow> causes;
  };
  std::vector<RunResult> results(static_cast<std::size_t>(n_runs));

  const Rng master(config.rng_seed);
  auto worker = [&](int run) {
    NetworkState state = make_state(grid, initial_population);
    Rng rng = master.fork(0xA11CE000ULL + static_cast<std::uint64_t>(run));
    EngineCarry carry;
    RunResult& out = results[static_cast<std::size_t>(run)];
    out.counts.reserve(static_cast<std::size_t>(n_epochs));
    out.cum_catastrophic.reserve(static_cast<std::size_t>(n_epochs));
    out.cum_all.reserve(static_cast<std::size_t>(n_epochs));
    out.causes.reserve(static_cast<std::size_t>(n_steps));
    auto record = [&]() {
      std::array<long, kNumSpecies> counts{};
      for (int s = 0; s < kNumSpecies; ++s) counts[static_cast<std::size_t>(s)] = state.count(static_cast<Species>(s));
      out.counts.push_back(counts);
      out.cum_catastrophic.push_back(state.counters.catastrophic);
      out.cum_all.push_back(state.counters.total());
    };
    record();
    for (int k = 0; k < n_steps; ++k) {
      StepReport report = step(state, config, models, rng, &carry);
      out.causes.push_back(report.causes);
      record();
    }
  };

  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int n_threads = std::max(1, std::min(n_runs, hw > 0 ? hw : 4));
  std::atomic<int> next_run{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const int run = next_run.fetch_add(1);
        if (run >= n_runs) return;
        worker(run);
      }
    });
  }
  for (std::thread& t : pool) t.join();

  EnsembleStats stats;
  stats.n_runs = n_runs;
  stats.epochs_years.resize(static_cast<std::size_t>(n_epochs));
  for (int k = 0; k < n_epochs; ++k) {
    stats.epochs_years[static_cast<std::size_t>(k)] = k * config.dt_years();
  }
  auto reduce = [&](auto getter, SeriesStats& series) {
    series.mean.assign(static_cast<std::size_t>(n_epochs), 0.0);
    series.stddev.assign(static_cast<std::size_t>(n_epochs), 0.0);
    for (int k = 0; k < n_epochs; ++k) {
      double sum = 0.0, sum2 = 0.0;
      for (int run = 0; run < n_runs; ++run) {
        const double v = getter(results[static_cast<std::size_t>(run)], k);
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / n_runs;
      series.mean[static_cast<std::size_t>(k)] = mean;
      const double var = std::max(0.0, sum2 / n_runs - mean * mean);
      series.stddev[static_cast<std::size_t>(k)] = std::sqrt(var);
    }
  };
  for (int s = 0; s < kNumSpecies; ++s) {
    reduce([s](const RunResult& r, int k) {
      return static_cast<double>(r.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]);
    },
           stats.species[static_cast<std::size_t>(s)]);
  }
  reduce([](const RunResult& r, int k) {
    double total = 0.0;
    for (long c : r.counts[static_cast<std::size_t>(k)]) total += static_cast<double>(c);
    return total;
  },
         stats.total);
  reduce([](const RunResult& r, int k) {
    return static_cast<double>(r.cum_catastrophic[static_cast<std::size_t>(k)]);
  },
         stats.cumulative_catastrophic);
  reduce([](const RunResult& r, int k) {
    return static_cast<double>(r.cum_all[static_cast<std::size_t>(k)]);
  },
         stats.cumulative_collisions);
  stats.cause_rows.reserve(static_cast<std::size_t>(n_runs));
  for (RunResult& r : results) stats.cause_rows.push_back(std::move(r.causes));
  return stats;
}

}  // namespace leonet
