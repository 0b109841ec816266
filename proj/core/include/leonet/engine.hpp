#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "leonet/breakup.hpp"
#include "leonet/collision.hpp"
#include "leonet/decay.hpp"
#include "leonet/launch.hpp"
#include "leonet/network_state.hpp"
#include "leonet/sim_config.hpp"

namespace leonet {

// Signed population-change causes per node. The bookkeeping identity is
// exact: a node's net delta over one step equals the sum over causes.
enum class Cause : int {
  CollisionLoss = 0,   // parents removed by collision events
  SmallCollisionLoss,  // payloads hit by lethal non-trackable fragments
  SmallCollisionGain,  // the same objects arriving in the N node
  PmdRemoved,          // successful post-mission disposal
  PmdFailLoss,         // failed disposal leaving the P node
  PmdFailGain,         // failed disposal arriving in the N node
  AdrRemoved,
  DecayOut,
  DecayIn,
  Reentered,
  EscapedLoss,
  LaunchGain,
  FragmentGain,        // new fragments routed into an F node
  kCount
};
inline constexpr int kNumCauses = static_cast<int>(Cause::kCount);

using CauseDeltas = std::array<long, kNumCauses>;

struct CollisionRecord {
  Species species_a = Species::Fragment;
  Species species_b = Species::Fragment;
  int site_a = -1;
  int site_b = -1;
  double dv_km_s = 0.0;
  bool catastrophic = false;
  double breakup_mass_kg = 0.0;
  bool removed_a = false;
  bool removed_b = false;
  long fragments_created = 0;   // bound + unbound
  long fragments_in_domain = 0;
  long fragments_reentered = 0;
  long fragments_escaped = 0;
};

// Expected-delta aggregates consumed by the carrying-capacity extraction.
struct CauseRow {
  double epoch_years = 0.0;
  double dt_years = 0.0;
  double x_fragments = 0.0;  // fragment count at the start of the step
  double y_payloads = 0.0;   // payload count at the start of the step
  double dF_decay = 0.0;     // net fragment change from decay (incl. reentry)
  double dF_FF = 0.0;        // net fragment change from F-F collisions
  double dF_PP = 0.0;        // fragment change from P-P collisions
  double dF_PF = 0.0;        // net fragment change from P-F collisions
  double dP_PP = 0.0;        // payload change from P-P collisions
  double dP_PF = 0.0;        // payload change from P-F collisions
  double dP_PMD = 0.0;       // payload change from end-of-life disposal
};

struct StepReport {
  double epoch_years = 0.0;  // epoch at the start of the step
  double dt_days = 0.0;
  std::map<int, CauseDeltas> node_deltas;
  std::vector<CollisionRecord> collisions;
  long small_collisions = 0;
  long pmd_expired = 0;
  long pmd_failed = 0;
  long adr_removed = 0;
  long launched = 0;
  long reentered = 0;
  long escaped = 0;
  CauseRow causes;

  void add(int node, Cause cause, long delta);
};

struct Models {
  DensityModel density = DensityModel::builtin_table();
  BreakupModelParams breakup = BreakupModelParams::builtin();
  std::optional<LaunchModels> launch;
};

// Carry-over between steps (fractional ADR quotas).
struct EngineCarry {
  std::array<double, kNumSpecies> adr_quota{0.0, 0.0, 0.0, 0.0};
};

// One fixed-order step: collisions -> small collisions -> breakup ->
// PMD -> ADR -> decay flows -> launches. Ordering effects are O(dt^2); the
// order is pinned so runs are reproducible.
StepReport step(NetworkState& state, const SimConfig& config, const Models& models, Rng& rng,
                EngineCarry* carry = nullptr);

struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct EnsembleStats {
  std::vector<double> epochs_years;
  std::array<SeriesStats, kNumSpecies> species;
  SeriesStats total;
  SeriesStats cumulative_catastrophic;
  SeriesStats cumulative_collisions;  // catastrophic + non-catastrophic + small
  std::vector<std::vector<CauseRow>> cause_rows;  // [run][step]
  int n_runs = 0;
};

// Independent runs with seeds forked off config.rng_seed; per-epoch mean and
// standard deviation; bit-reproducible for a fixed (seed, n_runs, config)
// regardless of thread count.
EnsembleStats run_monte_carlo(const SimConfig& config,
                              const std::vector<SpaceObject>& initial_population,
                              const Models& models, int n_runs);

}  // namespace leonet
