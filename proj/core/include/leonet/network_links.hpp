#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leonet/breakup.hpp"
#include "leonet/decay.hpp"
#include "leonet/engine.hpp"
#include "leonet/network_state.hpp"

namespace leonet {

enum class LinkKind { Collision, FragmentFlow, Decay, SmallCollision, Pmd };

const char* link_kind_code(LinkKind kind);  // "C", "F", "D", "SC", "PMD"

struct Link {
  int src_node = -1;
  int dst_node = -1;
  LinkKind kind = LinkKind::Collision;
  double chi_per_day = 0.0;
  double p = 0.0;  // 1 - exp(-chi dt)
};

struct LinkSet {
  int n_nodes = 0;
  double dt_days = 0.0;
  std::vector<Link> links;
};

// Probability of at least one event in dt: 1 - exp(-chi dt).
double link_probability(double chi_per_day, double dt_days);

// Pre-averaged fragment redistribution fractions. For every ordered pair of
// sites sharing a shell, a catastrophic breakup of two massive reference
// objects is synthesized and routed; fractions are averaged over repeated
// draws. The reentry/escape remainder is stored explicitly rather than
// renormalized away so downstream rates do not overcount.
class FlowTensor {
 public:
  struct Row {
    std::vector<std::pair<int, double>> dest_fractions;  // (site, fraction), ascending
    double reentered = 0.0;
    double escaped = 0.0;
  };

  const Row* row(int site_i, int site_l) const;
  double fraction(int site_i, int site_l, int dest_site) const;

  void set_row(int site_i, int site_l, Row row);
  std::size_t size() const { return rows_.size(); }
  const std::map<std::pair<int, int>, Row>& rows() const { return rows_; }

  void save(const std::string& path) const;
  static FlowTensor load(const std::string& path);

 private:
  std::map<std::pair<int, int>, Row> rows_;
};

struct FlowTensorOptions {
  int repetitions = 10;
  double reference_mass_kg = 20000.0;
  double reference_diameter_m = 8.0;
  double reference_area_m2 = 50.0;
};

FlowTensor precompute_flow_tensor(const SiteGrid& grid, const SimConfig& config,
                                  const BreakupModelParams& params, Rng& rng,
                                  const FlowTensorOptions& options = {});

// Builds the directed event-rate edges of a state snapshot:
//   C   collision pairs sharing a shell (tau* with CAM factors, plus the
//       kappa-scaled P-F small-collision rate on C edges),
//   F   fragment flows through the precomputed tensor,
//   SC  in-site P->N transition from small collisions,
//   D   expected decay flows between same-species nodes,
//   PMD in-site P->N transition from failed disposals.
// Only edges with positive rate are emitted.
LinkSet compute_link_rates(const NetworkState& state, const SimConfig& config,
                           const DensityModel& density, const FlowTensor& tensor);

// Edges with p >= rho (rho = 0 keeps every positive-probability link).
LinkSet subnetwork(const LinkSet& links, double rho_link);

struct NodeDegrees {
  std::vector<double> in;   // per node index
  std::vector<double> out;  // per node index
};

// Weighted degrees over aggregated connection strengths: parallel edges
// between the same ordered node pair collapse to the maximum of their event
// probabilities before summation.
NodeDegrees weighted_degrees(const LinkSet& links);

}  // namespace leonet
