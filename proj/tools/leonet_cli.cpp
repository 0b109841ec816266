// Command-line front end: simulation, network analysis, carrying capacity,
// flow-tensor precomputation, launch-model fitting and built-in validation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leonet/capacity.hpp"
#include "leonet/catalog_io.hpp"
#include "leonet/config_file.hpp"
#include "leonet/engine.hpp"
#include "leonet/export_results.hpp"
#include "leonet/network_links.hpp"

namespace fs = std::filesystem;
using namespace leonet;

namespace {

struct CommonOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<double> dt_days;
  std::optional<double> shell_km;
  std::optional<double> inc_deg;
  std::optional<double> s_cam;
  std::optional<double> gamma;
  std::optional<double> kappa;
  std::optional<double> lifetime_years;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master RNG seed");
    cmd->add_option("--runs", runs, "Monte Carlo runs");
    cmd->add_option("--dt-days", dt_days, "Step length in days");
    cmd->add_option("--shell-km", shell_km, "Altitude shell thickness in km");
    cmd->add_option("--inc-deg", inc_deg, "Inclination bin width in degrees");
    cmd->add_option("--scam", s_cam, "Collision avoidance success fraction");
    cmd->add_option("--gamma", gamma, "Post-mission disposal failure fraction");
    cmd->add_option("--kappa", kappa, "Small-collision frequency factor");
    cmd->add_option("--lifetime-years", lifetime_years, "Payload mission lifetime");
  }

  void apply(SimConfig& config) const {
    if (seed) config.rng_seed = *seed;
    if (runs) config.n_runs = *runs;
    if (dt_days) config.dt_days = *dt_days;
    if (shell_km) config.shell_km = *shell_km;
    if (inc_deg) config.inc_bin_deg = *inc_deg;
    if (s_cam) config.s_cam = *s_cam;
    if (gamma) config.gamma_pmd = *gamma;
    if (kappa) config.kappa_small = *kappa;
    if (lifetime_years) config.mission_lifetime_years = *lifetime_years;
  }
};

SimConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return SimConfig{};
  return load_sim_config(path);
}

std::shared_ptr<SiteGrid> grid_from_config(const SimConfig& config) {
  return std::make_shared<SiteGrid>(config.alt_min_km, config.alt_max_km, config.shell_km,
                                    config.inc_bin_deg, config.r_earth_km);
}

Models build_models(const SimConfig& config, const std::string& breakup_file,
                    const std::string& launch_file, const std::string& traffic_preset_name) {
  Models models;
  models.density = DensityModel::from_config(config);
  if (!breakup_file.empty()) models.breakup = BreakupModelParams::from_file(breakup_file);
  if (!launch_file.empty()) models.launch = LaunchModels::load(launch_file);
  if (!traffic_preset_name.empty()) {
    if (!models.launch) {
      throw std::runtime_error("--traffic-preset needs --launch-models for the mixtures");
    }
    models.launch->traffic = traffic_preset(traffic_preset_name);
  }
  return models;
}

void report_catalog(const CatalogLoadReport& report) {
  std::printf("catalog: %ld objects (P %ld, U %ld, N %ld, F %ld), %zu rejected\n", report.accepted,
              report.per_species[0], report.per_species[1], report.per_species[2],
              report.per_species[3], report.rejected.size());
  for (std::size_t k = 0; k < report.rejected.size() && k < 10; ++k) {
    std::printf("  rejected %s\n", report.rejected[k].c_str());
  }
}

int cmd_simulate(const std::string& config_path, const std::string& catalog_path,
                 const std::string& out_dir, const CommonOverrides& overrides,
                 const std::string& breakup_file, const std::string& launch_file,
                 const std::string& preset, const std::vector<double>& snapshot_years,
                 double horizon_years) {
  SimConfig config = load_config_or_default(config_path);
  overrides.apply(config);
  if (horizon_years > 0.0) config.horizon_years = horizon_years;
  config.check();

  CatalogLoadReport report;
  const auto population = load_population(catalog_path, &report, config.r_earth_km);
  report_catalog(report);

  const Models models = build_models(config, breakup_file, launch_file, preset);
  const EnsembleStats stats = run_monte_carlo(config, population, models, config.n_runs);

  fs::create_directories(out_dir);
  save_sim_config((fs::path(out_dir) / "config_used.cfg").string(), config);
  export_species_series((fs::path(out_dir) / "species_series.csv").string(), stats, config);
  export_collision_series((fs::path(out_dir) / "collisions.csv").string(), stats, config);
  export_cause_streams((fs::path(out_dir) / "causes").string(), stats, config);

  // Deterministic snapshot pass (run index 0) for network analysis epochs.
  if (!snapshot_years.empty()) {
    auto grid = grid_from_config(config);
    NetworkState state = make_state(grid, population);
    Rng rng = Rng(config.rng_seed).fork(0xA11CE000ULL);
    EngineCarry carry;
    std::vector<double> pending = snapshot_years;
    std::sort(pending.begin(), pending.end());
    auto emit = [&](double year) {
      char name[64];
      std::snprintf(name, sizeof(name), "population_y%04.0f.csv", year);
      std::vector<SpaceObject> flat;
      for (const Node& node : state.nodes()) {
        flat.insert(flat.end(), node.objects.begin(), node.objects.end());
      }
      save_population((fs::path(out_dir) / name).string(), flat);
      std::printf("snapshot year %.1f: %zu objects\n", year, flat.size());
    };
    std::size_t next = 0;
    while (next < pending.size() && pending[next] <= state.epoch_years + 1e-9) emit(pending[next++]);
    const int n_steps = config.n_steps();
    for (int k = 0; k < n_steps && next < pending.size(); ++k) {
      step(state, config, models, rng, &carry);
      while (next < pending.size() && pending[next] <= state.epoch_years + 1e-9) {
        emit(pending[next++]);
      }
    }
  }

  const std::size_t last = stats.epochs_years.size() - 1;
  std::printf("final mean population: %.1f (catastrophic collisions %.2f)\n",
              stats.total.mean[last], stats.cumulative_catastrophic.mean[last]);
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

int cmd_network(const std::string& config_path, const std::string& catalog_path,
                const std::string& out_dir, const CommonOverrides& overrides, double rho,
                const std::string& epoch_label, const std::string& tensor_path,
                const std::string& breakup_file) {
  SimConfig config = load_config_or_default(config_path);
  overrides.apply(config);
  config.check();

  CatalogLoadReport report;
  const auto population = load_population(catalog_path, &report, config.r_earth_km);
  report_catalog(report);

  auto grid = grid_from_config(config);
  NetworkState state = make_state(grid, population);

  const BreakupModelParams breakup =
      breakup_file.empty() ? BreakupModelParams::builtin() : BreakupModelParams::from_file(breakup_file);
  FlowTensor tensor;
  if (!tensor_path.empty() && fs::exists(tensor_path)) {
    tensor = FlowTensor::load(tensor_path);
    std::printf("loaded flow tensor from %s (%zu rows)\n", tensor_path.c_str(), tensor.size());
  } else {
    Rng rng(config.rng_seed);
    tensor = precompute_flow_tensor(*grid, config, breakup, rng);
    if (!tensor_path.empty()) tensor.save(tensor_path);
  }

  const DensityModel density = DensityModel::from_config(config);
  LinkSet links = compute_link_rates(state, config, density, tensor);
  if (rho > 0.0) links = subnetwork(links, rho);
  const NodeDegrees degrees = weighted_degrees(links);

  fs::create_directories(out_dir);
  const std::string suffix = epoch_label.empty() ? "" : "_" + epoch_label;
  export_links((fs::path(out_dir) / ("links" + suffix + ".csv")).string(), links, state, config);
  export_degrees((fs::path(out_dir) / ("degrees" + suffix + ".csv")).string(), degrees, state,
                 config);

  // Top-5 summary on stdout.
  std::vector<int> order(static_cast<std::size_t>(state.n_nodes()));
  for (int k = 0; k < state.n_nodes(); ++k) order[static_cast<std::size_t>(k)] = k;
  auto print_top = [&](const std::vector<double>& degree, const char* label) {
    std::partial_sort(order.begin(), order.begin() + 5, order.end(),
                      [&](int a, int b) { return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)]; });
    std::printf("top 5 by %s:\n", label);
    for (int k = 0; k < 5; ++k) {
      const Node& node = state.node(order[static_cast<std::size_t>(k)]);
      const OrbitSite& site = grid->site(node.site_id);
      std::printf("  %c [%g,%g) km x [%g,%g) deg  degree %.4f  (%d objects)\n",
                  species_code(node.species), site.alt_lo_km, site.alt_hi_km, site.inc_lo_deg,
                  site.inc_hi_deg, degree[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])],
                  node.count());
    }
  };
  print_top(degrees.in, "weighted in-degree");
  print_top(degrees.out, "weighted out-degree");
  std::printf("%zu links written to %s\n", links.links.size(), out_dir.c_str());
  return 0;
}

int cmd_capacity(const std::string& ensemble_dir, const std::string& out_dir,
                 const std::string& mode, double lambda, const std::string& config_path,
                 const CommonOverrides& overrides) {
  SimConfig config = load_config_or_default(config_path);
  overrides.apply(config);

  std::vector<CauseRow> rows;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(ensemble_dir)) {
    if (entry.path().filename().string().rfind("causes_run", 0) == 0) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("capacity: no causes_run*.csv in " + ensemble_dir);
  for (const auto& file : files) {
    const auto part = load_cause_stream(file.string());
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::printf("loaded %zu cause rows from %zu runs\n", rows.size(), files.size());

  fs::create_directories(out_dir);
  CapacityModel2D model;
  if (mode == "1d") {
    const CapacityModel1D m1 = extract_coefficients_1d(rows);
    model.a = m1.a;
    model.b = m1.b;
    std::printf("a = %.6e per year, b = %.6e per year-object, capacity a/b = %.6e\n", m1.a, m1.b,
                m1.b > 0.0 ? m1.capacity() : std::nan(""));
  } else if (mode == "2d") {
    model = extract_coefficients_2d(rows, lambda);
    std::printf("a=%.6e b=%.6e c=%.6e d=%.6e e=%.6e f=%.6e gamma=%.6e lambda=%.1f\n", model.a,
                model.b, model.c, model.d, model.e, model.f, model.gamma, model.lambda);
  } else {
    throw std::runtime_error("capacity: mode must be 1d or 2d");
  }
  const auto equilibria = find_equilibria(model);
  for (const Equilibrium& eq : equilibria) {
    const char* kind = eq.stability == Stability::Stable
                           ? "stable"
                           : (eq.stability == Stability::Saddle ? "saddle" : "unstable");
    std::printf("equilibrium x=%.6g y=%.6g (%s)\n", eq.x, eq.y, kind);
  }
  if (equilibria.empty()) std::printf("no real non-negative equilibrium\n");

  export_capacity((fs::path(out_dir) / "capacity.csv").string(), model, equilibria, config);
  double x_max = 1e5, y_max = 1e5;
  for (const Equilibrium& eq : equilibria) {
    x_max = std::max(x_max, 2.0 * eq.x);
    y_max = std::max(y_max, 2.0 * eq.y);
  }
  export_phase_grid((fs::path(out_dir) / "phase_grid.csv").string(), model, x_max,
                    std::max(y_max, 1.0), 60, config);
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

int cmd_flow_tensor(const std::string& config_path, const std::string& out_path,
                    const CommonOverrides& overrides, int repetitions,
                    const std::string& breakup_file) {
  SimConfig config = load_config_or_default(config_path);
  overrides.apply(config);
  config.check();
  auto grid = grid_from_config(config);
  const BreakupModelParams breakup =
      breakup_file.empty() ? BreakupModelParams::builtin() : BreakupModelParams::from_file(breakup_file);
  Rng rng(config.rng_seed);
  FlowTensorOptions options;
  options.repetitions = repetitions;
  const FlowTensor tensor = precompute_flow_tensor(*grid, config, breakup, rng, options);
  tensor.save(out_path);
  std::printf("flow tensor: %zu source pairs over %d sites -> %s\n", tensor.size(),
              grid->n_sites(), out_path.c_str());
  return 0;
}

int cmd_fit_launch(const std::string& history_path, const std::string& out_path, int k_orbital,
                   int k_physical, const std::string& preset, std::uint64_t seed) {
  const auto history = load_launch_history(history_path);
  std::printf("history: %zu records\n", history.size());
  Rng rng(seed);
  LaunchModels models = fit_launch_models(history, k_orbital, k_physical, rng);
  if (!preset.empty()) models.traffic = traffic_preset(preset);
  models.save(out_path);
  std::printf("class fractions: payload %.3f, upper stage %.3f, mission related %.3f\n",
              models.class_fractions[0], models.class_fractions[1], models.class_fractions[2]);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

// Built-in oracle suites: quick spot checks of the numerical core, printing
// one line per suite.
int cmd_validate();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic dynamic network simulator of the LEO object environment"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Propagate a catalog and export statistics");
  std::string sim_config, sim_catalog, sim_out = "out", sim_breakup, sim_launch, sim_preset;
  std::vector<double> sim_snapshots;
  double sim_horizon = -1.0;
  CommonOverrides sim_overrides;
  simulate->add_option("--config", sim_config, "Configuration file");
  simulate->add_option("--catalog", sim_catalog, "Initial population CSV")->required();
  simulate->add_option("--out", sim_out, "Output directory");
  simulate->add_option("--breakup-params", sim_breakup, "Breakup constants file");
  simulate->add_option("--launch-models", sim_launch, "Launch traffic/mixture file");
  simulate->add_option("--traffic-preset", sim_preset, "Traffic preset: lm1, lm2 or lm3");
  simulate->add_option("--snapshot-years", sim_snapshots, "Epochs (years) to dump state snapshots");
  simulate->add_option("--horizon-years", sim_horizon, "Override the simulated horizon");
  sim_overrides.add_flags(simulate);

  // network
  auto* network = app.add_subcommand("network", "Build links, probabilities and degrees");
  std::string net_config, net_catalog, net_out = "out", net_tensor, net_breakup, net_epoch;
  double net_rho = 0.0;
  CommonOverrides net_overrides;
  network->add_option("--config", net_config, "Configuration file");
  network->add_option("--catalog", net_catalog, "State snapshot CSV")->required();
  network->add_option("--out", net_out, "Output directory");
  network->add_option("--rho", net_rho, "Subnetwork probability threshold");
  network->add_option("--epoch", net_epoch, "Label appended to output file names");
  network->add_option("--tensor", net_tensor, "Flow tensor file (loaded if present, else saved)");
  network->add_option("--breakup-params", net_breakup, "Breakup constants file");
  net_overrides.add_flags(network);

  // capacity
  auto* capacity = app.add_subcommand("capacity", "Extract coefficients and equilibria");
  std::string cap_dir, cap_out = "out", cap_mode = "1d", cap_config;
  double cap_lambda = 0.0;
  CommonOverrides cap_overrides;
  capacity->add_option("--ensemble", cap_dir, "Directory with causes_run*.csv")->required();
  capacity->add_option("--out", cap_out, "Output directory");
  capacity->add_option("--mode", cap_mode, "1d or 2d");
  capacity->add_option("--lambda", cap_lambda, "Launch rate (payloads/year) for 2d mode");
  capacity->add_option("--config", cap_config, "Configuration file (for provenance hash)");
  cap_overrides.add_flags(capacity);

  // flow-tensor
  auto* flow = app.add_subcommand("flow-tensor", "Precompute fragment redistribution fractions");
  std::string flow_config, flow_out = "tensor.csv", flow_breakup;
  int flow_reps = 10;
  CommonOverrides flow_overrides;
  flow->add_option("--config", flow_config, "Configuration file");
  flow->add_option("--out", flow_out, "Output tensor CSV");
  flow->add_option("--repetitions", flow_reps, "Monte Carlo repetitions per pair");
  flow->add_option("--breakup-params", flow_breakup, "Breakup constants file");
  flow_overrides.add_flags(flow);

  // fit-launch
  auto* fit = app.add_subcommand("fit-launch", "Fit mixture models to historical launches");
  std::string fit_history, fit_out = "launch_models.txt", fit_preset;
  int fit_k_orbital = 4, fit_k_physical = 3;
  std::uint64_t fit_seed = 1;
  fit->add_option("--history", fit_history, "Historical launch CSV")->required();
  fit->add_option("--out", fit_out, "Output model file");
  fit->add_option("--k-orbital", fit_k_orbital, "Mixture components for (a, i)");
  fit->add_option("--k-physical", fit_k_physical, "Mixture components for (mass, area, length)");
  fit->add_option("--traffic-preset", fit_preset, "Embed a traffic preset: lm1, lm2 or lm3");
  fit->add_option("--seed", fit_seed, "Fitting RNG seed");

  // validate
  app.add_subcommand("validate", "Run the built-in oracle suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(sim_config, sim_catalog, sim_out, sim_overrides, sim_breakup, sim_launch,
                          sim_preset, sim_snapshots, sim_horizon);
    }
    if (network->parsed()) {
      return cmd_network(net_config, net_catalog, net_out, net_overrides, net_rho, net_epoch,
                         net_tensor, net_breakup);
    }
    if (capacity->parsed()) {
      return cmd_capacity(cap_dir, cap_out, cap_mode, cap_lambda, cap_config, cap_overrides);
    }
    if (flow->parsed()) {
      return cmd_flow_tensor(flow_config, flow_out, flow_overrides, flow_reps, flow_breakup);
    }
    if (fit->parsed()) {
      return cmd_fit_launch(fit_history, fit_out, fit_k_orbital, fit_k_physical, fit_preset,
                            fit_seed);
    }
    return cmd_validate();
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}

namespace {

int cmd_validate() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
  };

  // Mirrored inclination bins have equal volumes.
  {
    bool ok = true;
    for (double x : {10.0, 40.0, 75.0}) {
      OrbitSite lower{0, 600.0, 650.0, x, 90.0};
      OrbitSite upper{0, 600.0, 650.0, 90.0, 180.0 - x};
      ok = ok && std::fabs(node_volume_km3(lower) - node_volume_km3(upper)) <
                     1e-9 * node_volume_km3(lower);
    }
    check("node volumes symmetric across the polar bin", ok);
  }
  // Cross sections against brute-force enumeration.
  {
    Rng rng(17);
    Node node;
    node.species = Species::Fragment;
    node.site_id = 0;
    for (int k = 0; k < 150; ++k) {
      SpaceObject obj;
      obj.radius_m = rng.uniform(0.05, 2.5);
      node.objects.push_back(obj);
    }
    double sum = 0.0;
    long pairs = 0;
    for (std::size_t q = 0; q < node.objects.size(); ++q) {
      for (std::size_t p = q + 1; p < node.objects.size(); ++p) {
        const double d = node.objects[q].diameter_m() + node.objects[p].diameter_m();
        sum += kPi / 4.0 * d * d;
        ++pairs;
      }
    }
    const double brute = sum / static_cast<double>(pairs) * kM2ToKm2;
    const double closed = avg_cross_section_self_km2(node);
    check("cross sections equal pairwise enumeration", std::fabs(closed - brute) < 1e-12 * brute);
  }
  // Poisson sampling mean.
  {
    Rng rng(23);
    const int n = 200000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += static_cast<double>(rng.poisson(2.0));
    check("poisson mean within 4 sigma", std::fabs(sum / n - 2.0) < 4.0 * std::sqrt(2.0 / n));
  }
  // Drag identity in vacuum and the decreasing property.
  {
    const DragResult vac = drag_step(7000.0, 0.05, 2.2, 0.01, 0.0, 2.592e6);
    const DragResult drag = drag_step(7000.0, 0.05, 2.2, 0.01, 1e-13, 2.592e6);
    check("drag map is the identity in vacuum", vac.a_km == 7000.0 && vac.ecc == 0.05);
    check("drag shrinks orbits", drag.a_km < 7000.0 && drag.ecc < 0.05);
  }
  // Residence weights normalize.
  {
    const SiteGrid grid(200.0, 2200.0, 50.0, 60.0);
    const ResidenceWeights w = residence_weights(7378.0, 0.05, grid);
    double total = w.below + w.above;
    for (double v : w.w) total += v;
    check("residence weights sum to one", std::fabs(total - 1.0) < 1e-12);
  }
  // Per-step bookkeeping identity on a compact random state.
  {
    SimConfig config;
    config.s_cam = 0.5;
    config.kappa_small = 5.3;
    auto grid = std::make_shared<SiteGrid>(config.alt_min_km, config.alt_max_km, config.shell_km,
                                           config.inc_bin_deg);
    NetworkState state(grid);
    Rng seed_rng(29);
    for (int k = 0; k < 250; ++k) {
      SpaceObject obj;
      obj.species = kAllSpecies[seed_rng.uniform_index(4)];
      obj.a_km = kEarthRadiusKm + seed_rng.uniform(400.0, 500.0);
      obj.inc_deg = seed_rng.uniform(60.0, 120.0);
      obj.mass_kg = seed_rng.uniform(1.0, 1000.0);
      obj.radius_m = seed_rng.uniform(5.0, 25.0);
      obj.area_m2 = kPi * obj.radius_m * obj.radius_m;
      obj.mission_elapsed_years = seed_rng.uniform(0.0, 6.0);
      state.insert(obj);
    }
    Models models;
    Rng rng(31);
    bool ok = true;
    for (int s = 0; s < 3; ++s) {
      std::vector<long> before(static_cast<std::size_t>(state.n_nodes()));
      for (int idx = 0; idx < state.n_nodes(); ++idx) {
        before[static_cast<std::size_t>(idx)] = state.node(idx).count();
      }
      const StepReport report = step(state, config, models, rng);
      for (int idx = 0; idx < state.n_nodes(); ++idx) {
        long expected = 0;
        const auto it = report.node_deltas.find(idx);
        if (it != report.node_deltas.end()) {
          for (long v : it->second) expected += v;
        }
        ok = ok && state.node(idx).count() - before[static_cast<std::size_t>(idx)] == expected;
      }
    }
    check("per-step bookkeeping identity is exact", ok);
  }
  // Degree handshake.
  {
    LinkSet links;
    links.n_nodes = 6;
    Rng rng(37);
    for (int k = 0; k < 30; ++k) {
      Link l;
      l.src_node = static_cast<int>(rng.uniform_index(6));
      l.dst_node = static_cast<int>(rng.uniform_index(6));
      l.kind = LinkKind::Collision;
      l.chi_per_day = rng.uniform(0.0, 0.2);
      l.p = link_probability(l.chi_per_day, 30.0);
      links.links.push_back(l);
    }
    const NodeDegrees degrees = weighted_degrees(links);
    double in = 0.0, out = 0.0;
    for (double v : degrees.in) in += v;
    for (double v : degrees.out) out += v;
    check("degree handshake identity", std::fabs(in - out) < 1e-9);
  }
  // Bernoulli solution satisfies its own differential equation.
  {
    const double a = 0.0047, b = 8.66e-8;
    bool ok = true;
    for (double x0 : {2e4, 8e4}) {
      for (double t : {1.0, 10.0}) {
        const double h = 1e-4;
        const double fd =
            (bernoulli_solution(a, b, x0, t + h) - bernoulli_solution(a, b, x0, t - h)) / (2.0 * h);
        const double x = bernoulli_solution(a, b, x0, t);
        ok = ok && std::fabs(fd - (-a * x + b * x * x)) < 1e-6 * std::fabs(a * x);
      }
    }
    check("bernoulli solution satisfies xdot = -a x + b x^2", ok);
  }

  std::printf(failures == 0 ? "all validation suites passed\n"
                            : "%d validation suites failed\n",
              failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
