#pragma once

#include <string>
#include <vector>

#include "leonet/capacity.hpp"
#include "leonet/engine.hpp"
#include "leonet/network_links.hpp"

namespace leonet {

// Every export carries one "# config_hash=..." provenance line; repeated
// exports of the same inputs are byte-identical.

void export_species_series(const std::string& path, const EnsembleStats& stats,
                           const SimConfig& config);
void export_collision_series(const std::string& path, const EnsembleStats& stats,
                             const SimConfig& config);
// One cause-stream CSV per run: causes_run<NNN>.csv under dir.
void export_cause_streams(const std::string& dir, const EnsembleStats& stats,
                          const SimConfig& config);
std::vector<CauseRow> load_cause_stream(const std::string& path);

void export_links(const std::string& path, const LinkSet& links, const NetworkState& state,
                  const SimConfig& config);
// Lattice layout: one row per node with its grid position and degrees.
void export_degrees(const std::string& path, const NodeDegrees& degrees,
                    const NetworkState& state, const SimConfig& config);

void export_capacity(const std::string& path, const CapacityModel2D& model,
                     const std::vector<Equilibrium>& equilibria, const SimConfig& config);
// (x, y, xdot, ydot) samples on a regular grid for phase-portrait plots.
void export_phase_grid(const std::string& path, const CapacityModel2D& model, double x_max,
                       double y_max, int n, const SimConfig& config);

}  // namespace leonet
