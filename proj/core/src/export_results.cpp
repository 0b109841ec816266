#include "leonet/export_results.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leonet {

namespace {

std::ofstream open_with_hash(const std::string& path, const SimConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export: cannot open " + path);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# config_hash=0x%016" PRIx64 "\n", config.hash());
  out << buf;
  return out;
}

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Saddle: return "saddle";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

}  // namespace

void export_species_series(const std::string& path, const EnsembleStats& stats,
                           const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "epoch_years,P_mean,P_std,U_mean,U_std,N_mean,N_std,F_mean,F_std,total_mean,total_std\n";
  char buf[512];
  for (std::size_t k = 0; k < stats.epochs_years.size(); ++k) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  stats.epochs_years[k], stats.species[0].mean[k], stats.species[0].stddev[k],
                  stats.species[1].mean[k], stats.species[1].stddev[k], stats.species[2].mean[k],
                  stats.species[2].stddev[k], stats.species[3].mean[k], stats.species[3].stddev[k],
                  stats.total.mean[k], stats.total.stddev[k]);
    out << buf;
  }
}

void export_collision_series(const std::string& path, const EnsembleStats& stats,
                             const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "epoch_years,catastrophic_mean,catastrophic_std,all_mean,all_std\n";
  char buf[256];
  for (std::size_t k = 0; k < stats.epochs_years.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", stats.epochs_years[k],
                  stats.cumulative_catastrophic.mean[k], stats.cumulative_catastrophic.stddev[k],
                  stats.cumulative_collisions.mean[k], stats.cumulative_collisions.stddev[k]);
    out << buf;
  }
}

void export_cause_streams(const std::string& dir, const EnsembleStats& stats,
                          const SimConfig& config) {
  std::filesystem::create_directories(dir);
  char name[64];
  for (std::size_t run = 0; run < stats.cause_rows.size(); ++run) {
    std::snprintf(name, sizeof(name), "causes_run%03zu.csv", run);
    auto out = open_with_hash((std::filesystem::path(dir) / name).string(), config);
    out << "epoch_years,dt_years,x_fragments,y_payloads,dF_decay,dF_FF,dF_PP,dF_PF,dP_PP,dP_PF,"
           "dP_PMD\n";
    char buf[512];
    for (const CauseRow& row : stats.cause_rows[run]) {
      std::snprintf(buf, sizeof(buf),
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    row.epoch_years, row.dt_years, row.x_fragments, row.y_payloads, row.dF_decay,
                    row.dF_FF, row.dF_PP, row.dF_PF, row.dP_PP, row.dP_PF, row.dP_PMD);
      out << buf;
    }
  }
}

std::vector<CauseRow> load_cause_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_cause_stream: cannot open " + path);
  std::vector<CauseRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'e') continue;  // hash/header lines
    std::istringstream ss(line);
    std::string cell;
    double v[11];
    int n = 0;
    while (n < 11 && std::getline(ss, cell, ',')) v[n++] = std::stod(cell);
    if (n != 11) throw std::runtime_error("load_cause_stream: bad row " + line);
    CauseRow row;
    row.epoch_years = v[0];
    row.dt_years = v[1];
    row.x_fragments = v[2];
    row.y_payloads = v[3];
    row.dF_decay = v[4];
    row.dF_FF = v[5];
    row.dF_PP = v[6];
    row.dF_PF = v[7];
    row.dP_PP = v[8];
    row.dP_PF = v[9];
    row.dP_PMD = v[10];
    rows.push_back(row);
  }
  return rows;
}

void export_links(const std::string& path, const LinkSet& links, const NetworkState& state,
                  const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "src_species,src_site,dst_species,dst_site,kind,chi_per_day,p\n";
  char buf[256];
  for (const Link& link : links.links) {
    const Node& src = state.node(link.src_node);
    const Node& dst = state.node(link.dst_node);
    std::snprintf(buf, sizeof(buf), "%c,%d,%c,%d,%s,%.12g,%.12g\n", species_code(src.species),
                  src.site_id, species_code(dst.species), dst.site_id, link_kind_code(link.kind),
                  link.chi_per_day, link.p);
    out << buf;
  }
}

void export_degrees(const std::string& path, const NodeDegrees& degrees,
                    const NetworkState& state, const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "node,species,site_id,shell,inc_bin,alt_lo_km,alt_hi_km,inc_lo_deg,inc_hi_deg,count,"
         "d_in,d_out\n";
  char buf[320];
  const SiteGrid& grid = state.grid();
  for (int idx = 0; idx < state.n_nodes(); ++idx) {
    const Node& node = state.node(idx);
    const OrbitSite& site = grid.site(node.site_id);
    std::snprintf(buf, sizeof(buf), "%d,%c,%d,%d,%d,%.6g,%.6g,%.6g,%.6g,%d,%.12g,%.12g\n", idx,
                  species_code(node.species), node.site_id, grid.shell_of(node.site_id),
                  grid.inc_bin_of(node.site_id), site.alt_lo_km, site.alt_hi_km, site.inc_lo_deg,
                  site.inc_hi_deg, node.count(), degrees.in[static_cast<std::size_t>(idx)],
                  degrees.out[static_cast<std::size_t>(idx)]);
    out << buf;
  }
}

void export_capacity(const std::string& path, const CapacityModel2D& model,
                     const std::vector<Equilibrium>& equilibria, const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "key,value\n";
  char buf[128];
  auto kv = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g\n", key, v);
    out << buf;
  };
  kv("a", model.a);
  kv("b", model.b);
  kv("c", model.c);
  kv("d", model.d);
  kv("e", model.e);
  kv("f", model.f);
  kv("lambda", model.lambda);
  kv("gamma", model.gamma);
  if (model.b > 0.0) kv("capacity_a_over_b", model.a / model.b);
  for (std::size_t i = 0; i < equilibria.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "equilibrium_%zu,%.12g %.12g %s\n", i, equilibria[i].x,
                  equilibria[i].y, stability_name(equilibria[i].stability));
    out << buf;
  }
}

void export_phase_grid(const std::string& path, const CapacityModel2D& model, double x_max,
                       double y_max, int n, const SimConfig& config) {
  auto out = open_with_hash(path, config);
  out << "x,y,xdot,ydot\n";
  char buf[256];
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = x_max * i / n;
      const double y = y_max * j / n;
      double xdot, ydot;
      capacity_derivatives(model, x, y, xdot, ydot);
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", x, y, xdot, ydot);
      out << buf;
    }
  }
}

}  // namespace leonet
