#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leonet/gmm.hpp"
#include "leonet/network_state.hpp"
#include "leonet/rng.hpp"
#include "leonet/sim_config.hpp"

namespace leonet {

// Exponential-logistic launch traffic:
//   Lambda(t) = n0 + sum_i A_i e^{d_i (t - t_i)} / (b_i + e^{-c_i (t - t_i)})
// in objects per year, t in years.
struct TrafficTerm {
  double amplitude = 0.0;  // A
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;
  double t0_years = 0.0;
};

struct TrafficParams {
  double n0 = 0.0;
  std::vector<TrafficTerm> terms;
};

double traffic_curve(double t_years, const TrafficParams& params);

// Qualitative forecast presets. Shapes follow the published narratives (one
// keeps growing, the others plateau early/late at different levels); the
// numeric parameters are illustrative, not fitted values.
TrafficParams traffic_preset(const std::string& name);  // "lm1", "lm2", "lm3"

enum class LaunchClass { Payload = 0, UpperStage = 1, MissionRelated = 2 };
inline constexpr int kNumLaunchClasses = 3;

Species launch_class_species(LaunchClass cls);

struct HistoricalLaunch {
  double epoch_years = 0.0;
  LaunchClass cls = LaunchClass::Payload;
  double a_km = 0.0;
  double inc_deg = 0.0;
  double mass_kg = 0.0;
  double area_m2 = 0.0;
  double length_m = 0.0;
};

// CSV columns: epoch,class,a_km,i_deg,mass_kg,area_m2,length_m
std::vector<HistoricalLaunch> load_launch_history(const std::string& path);

struct LaunchModels {
  TrafficParams traffic;
  std::array<double, kNumLaunchClasses> class_fractions{1.0, 0.0, 0.0};
  std::array<std::optional<Gmm>, kNumLaunchClasses> orbital;   // (a_km, inc_deg)
  std::array<std::optional<Gmm>, kNumLaunchClasses> physical;  // (mass_kg, area_m2, length_m)

  void save(const std::string& path) const;
  static LaunchModels load(const std::string& path);
};

// Fits the per-class mixtures and class proportions from historical
// records. Traffic parameters are not fitted here; callers pick a preset or
// load them from file.
LaunchModels fit_launch_models(const std::vector<HistoricalLaunch>& history, int k_orbital,
                               int k_physical, Rng& rng);

struct InjectReport {
  long total = 0;
  std::array<long, kNumLaunchClasses> per_class{0, 0, 0};
  std::vector<std::pair<int, long>> per_node;  // (node index, added)
  long clamped = 0;                            // draws forced into the domain
};

// Draws Poisson(Lambda(t) dt) new objects, splits them across classes and
// inserts them into the sites their sampled (a, i) bin to. Out-of-domain
// draws are resampled a bounded number of times, then clamped.
InjectReport inject_launches(NetworkState& state, double t_years, double dt_days,
                             const LaunchModels& models, Rng& rng);

}  // namespace leonet
