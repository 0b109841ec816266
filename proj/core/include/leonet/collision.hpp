#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "leonet/network_state.hpp"
#include "leonet/rng.hpp"

namespace leonet {

// Per-node sums reused across every pair the node takes part in.
struct NodeKinematics {
  int count = 0;
  double sum_diameter_m = 0.0;
  double sum_diameter2_m2 = 0.0;
  double mean_a_km = 0.0;
  double mean_inc_deg = 0.0;
  double min_radius_m = 0.0;
  double max_radius_m = 0.0;
};

NodeKinematics summarize(const Node& node);

// Representative speed of a node: vis-viva at the shell mid radius with the
// node's mean semi-major axis.
double node_speed_km_s(const NodeKinematics& kin, double shell_mid_radius_km, double mu_km3_s2);

// Closing-speed approximation sqrt(vi^2 + vj^2 - 2 vi vj cos(ii) cos(ij))
// using the mean inclination of each node's objects. Throws
// std::invalid_argument when either node is empty.
double mean_relative_velocity_km_s(const Node& node_i, const Node& node_j, const SiteGrid& grid,
                                   double mu_km3_s2);

// Average of pi/4 (dq + dp)^2 over unordered object pairs of one node,
// computed in closed form. Requires n >= 2. Returned in km^2.
double avg_cross_section_self_km2(const Node& node);
double avg_cross_section_self_km2(const NodeKinematics& kin);

// Same average over cross pairs of two distinct nodes. Both non-empty.
double avg_cross_section_cross_km2(const Node& node_i, const Node& node_j);
double avg_cross_section_cross_km2(const NodeKinematics& ki, const NodeKinematics& kj);

// Expected collisions per day between two nodes:
//   tau = n_i n_j dv sigma / max(V_i, V_j)
// with n_j := (n_i - 1)/2 for self pairs (may be fractional; expected-value
// semantics). Empty nodes and singleton self pairs yield 0.
double mean_collision_rate_per_day(const Node& node_i, const Node& node_j, const SiteGrid& grid,
                                   double mu_km3_s2);

// Hot-path variants over precomputed per-node summaries.
double pair_relative_velocity_km_s(const NodeKinematics& ki, const NodeKinematics& kj,
                                   double r_mid_i_km, double r_mid_j_km, double mu_km3_s2);
double pair_rate_per_day(const NodeKinematics& ki, const NodeKinematics& kj, bool self_pair,
                         double dv_km_s, double volume_km3);

enum class JumpModifier { Plain, Cam, Cam2, Small };

// Poisson draw N(m * rate * dt) with m = 1, (1-s_cam), (1-s_cam)^2 or kappa.
std::int64_t sample_jump(double rate_per_day, double dt_days, JumpModifier modifier, double s_cam,
                         double kappa, Rng& rng);

// Distribution over radius-bin index pairs used to pick the colliding
// objects once a jump has fired. Bins are N_D equal-width radius intervals
// between each node's min and max radius.
struct PairSelectionMatrix {
  int n_bins = 0;
  bool self_pair = false;
  std::vector<double> p;  // row-major [k * n_bins + l], values in [0, 1]
  std::vector<std::vector<int>> members_i;  // object indices of node_i per bin
  std::vector<std::vector<int>> members_j;  // object indices of node_j per bin

  double at(int k, int l) const { return p[static_cast<std::size_t>(k) * n_bins + l]; }
  double total() const;
};

PairSelectionMatrix build_pair_selection_matrix(const Node& node_i, const Node& node_j,
                                                int n_bins, double dt_days, const SiteGrid& grid,
                                                double mu_km3_s2);

// Samples a bin pair proportionally to P, then uniform objects within the
// bins (distinct objects for self pairs). Returns indices into the nodes'
// object vectors. Throws std::runtime_error when no positive entry exists.
std::pair<int, int> select_colliding_pair(const PairSelectionMatrix& matrix, Rng& rng);

}  // namespace leonet
