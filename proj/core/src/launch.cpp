#include "leonet/launch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace leonet {

double traffic_curve(double t_years, const TrafficParams& params) {
  double rate = params.n0;
  for (const TrafficTerm& term : params.terms) {
    const double dt = t_years - term.t0_years;
    rate += term.amplitude * std::exp(term.d * dt) / (term.b + std::exp(-term.c * dt));
  }
  return rate;
}

TrafficParams traffic_preset(const std::string& name) {
  // t is measured in years since the simulation start (2023-equivalent).
  TrafficParams p;
  p.n0 = 2200.0;
  if (name == "lm1") {
    // Steady growth through the whole horizon.
    p.terms.push_back({2600.0, 1.0, 0.35, 0.028, 12.0});
  } else if (name == "lm2") {
    // Early plateau (around year ~9).
    p.terms.push_back({3800.0, 1.0, 0.8, 0.0, 5.0});
  } else if (name == "lm3") {
    // Later, higher plateau (around year ~27).
    p.terms.push_back({9500.0, 1.0, 0.3, 0.0, 19.0});
  } else {
    throw std::invalid_argument("traffic_preset: unknown preset " + name);
  }
  return p;
}

Species launch_class_species(LaunchClass cls) {
  switch (cls) {
    case LaunchClass::Payload: return Species::Payload;
    case LaunchClass::UpperStage: return Species::UpperStage;
    // Mission-related debris cannot manoeuvre; it enters the
    // non-manoeuvrable population.
    case LaunchClass::MissionRelated: return Species::NonManoeuvrable;
  }
  return Species::NonManoeuvrable;
}

namespace {

LaunchClass class_from_token(const std::string& tok) {
  if (tok == "payload" || tok == "P" || tok == "p") return LaunchClass::Payload;
  if (tok == "upper_stage" || tok == "U" || tok == "u") return LaunchClass::UpperStage;
  if (tok == "mission_related" || tok == "M" || tok == "m") return LaunchClass::MissionRelated;
  throw std::runtime_error("launch history: unknown class " + tok);
}

const char* class_token(LaunchClass cls) {
  switch (cls) {
    case LaunchClass::Payload: return "payload";
    case LaunchClass::UpperStage: return "upper_stage";
    case LaunchClass::MissionRelated: return "mission_related";
  }
  return "?";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::vector<HistoricalLaunch> load_launch_history(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("launch history: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("launch history: empty file");
  std::vector<HistoricalLaunch> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (cells.size() < 7) throw std::runtime_error("launch history: bad row " + line);
    HistoricalLaunch rec;
    rec.epoch_years = std::stod(cells[0]);
    rec.cls = class_from_token(cells[1]);
    rec.a_km = std::stod(cells[2]);
    rec.inc_deg = std::stod(cells[3]);
    rec.mass_kg = std::stod(cells[4]);
    rec.area_m2 = std::stod(cells[5]);
    rec.length_m = std::stod(cells[6]);
    out.push_back(rec);
  }
  return out;
}

LaunchModels fit_launch_models(const std::vector<HistoricalLaunch>& history, int k_orbital,
                               int k_physical, Rng& rng) {
  LaunchModels models;
  std::array<std::vector<GmmPoint>, kNumLaunchClasses> orbital_samples;
  std::array<std::vector<GmmPoint>, kNumLaunchClasses> physical_samples;
  for (const HistoricalLaunch& rec : history) {
    const auto c = static_cast<std::size_t>(rec.cls);
    orbital_samples[c].push_back({rec.a_km, rec.inc_deg, 0.0});
    physical_samples[c].push_back({rec.mass_kg, rec.area_m2, rec.length_m});
  }
  const double total = static_cast<double>(history.size());
  if (total == 0.0) throw std::invalid_argument("fit_launch_models: empty history");
  for (int c = 0; c < kNumLaunchClasses; ++c) {
    const auto& orb = orbital_samples[static_cast<std::size_t>(c)];
    models.class_fractions[static_cast<std::size_t>(c)] = orb.size() / total;
    if (orb.empty()) continue;
    const int ko = std::min<int>(k_orbital, static_cast<int>(orb.size()));
    const int kp = std::min<int>(k_physical, static_cast<int>(orb.size()));
    Rng rng_o = rng.fork(101 + static_cast<std::uint64_t>(c));
    Rng rng_p = rng.fork(201 + static_cast<std::uint64_t>(c));
    models.orbital[static_cast<std::size_t>(c)] = Gmm::fit(orb, 2, ko, rng_o);
    models.physical[static_cast<std::size_t>(c)] =
        Gmm::fit(physical_samples[static_cast<std::size_t>(c)], 3, kp, rng_p);
  }
  return models;
}

namespace {

void write_gmm(std::ostream& out, const char* key, const Gmm& gmm) {
  for (const GmmComponent& c : gmm.components()) {
    out << key << " = " << c.weight;
    for (int d = 0; d < gmm.dim(); ++d) out << ' ' << c.mean[static_cast<std::size_t>(d)];
    for (int i = 0; i < gmm.dim(); ++i) {
      for (int j = 0; j <= i; ++j) out << ' ' << c.cov[static_cast<std::size_t>(i) * 3 + j];
    }
    out << '\n';
  }
}

GmmComponent parse_component(const std::string& value, int dim) {
  std::istringstream ss(value);
  GmmComponent c;
  c.cov.fill(0.0);
  if (!(ss >> c.weight)) throw std::runtime_error("launch models: bad component " + value);
  for (int d = 0; d < dim; ++d) ss >> c.mean[static_cast<std::size_t>(d)];
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      ss >> c.cov[static_cast<std::size_t>(i) * 3 + j];
      c.cov[static_cast<std::size_t>(j) * 3 + i] = c.cov[static_cast<std::size_t>(i) * 3 + j];
    }
  }
  if (!ss) throw std::runtime_error("launch models: bad component " + value);
  return c;
}

}  // namespace

void LaunchModels::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("launch models: cannot open " + path);
  out.precision(17);
  out << "# launch traffic and per-class mixture parameters\n[traffic]\n";
  out << "n0 = " << traffic.n0 << '\n';
  for (const TrafficTerm& t : traffic.terms) {
    out << "term = " << t.amplitude << ' ' << t.b << ' ' << t.c << ' ' << t.d << ' '
        << t.t0_years << '\n';
  }
  for (int c = 0; c < kNumLaunchClasses; ++c) {
    out << "[class " << class_token(static_cast<LaunchClass>(c)) << "]\n";
    out << "fraction = " << class_fractions[static_cast<std::size_t>(c)] << '\n';
    if (orbital[static_cast<std::size_t>(c)]) {
      write_gmm(out, "orbital", *orbital[static_cast<std::size_t>(c)]);
    }
    if (physical[static_cast<std::size_t>(c)]) {
      write_gmm(out, "physical", *physical[static_cast<std::size_t>(c)]);
    }
  }
}

LaunchModels LaunchModels::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("launch models: cannot open " + path);
  LaunchModels models;
  models.class_fractions = {0.0, 0.0, 0.0};
  std::string line, section;
  std::array<std::vector<GmmComponent>, kNumLaunchClasses> orbital_comps, physical_comps;
  int current_class = -1;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.front() == '[') {
      section = line.substr(1, line.find(']') - 1);
      if (section.rfind("class ", 0) == 0) {
        current_class = static_cast<int>(class_from_token(section.substr(6)));
      } else {
        current_class = -1;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("launch models: bad line " + line);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value = line.substr(eq + 1);
    if (section == "traffic") {
      if (key == "n0") {
        models.traffic.n0 = std::stod(value);
      } else if (key == "term") {
        std::istringstream ss(value);
        TrafficTerm t;
        ss >> t.amplitude >> t.b >> t.c >> t.d >> t.t0_years;
        if (!ss) throw std::runtime_error("launch models: bad term " + value);
        models.traffic.terms.push_back(t);
      } else {
        throw std::runtime_error("launch models: unknown key " + key);
      }
    } else if (current_class >= 0) {
      const auto c = static_cast<std::size_t>(current_class);
      if (key == "fraction") models.class_fractions[c] = std::stod(value);
      else if (key == "orbital") orbital_comps[c].push_back(parse_component(value, 2));
      else if (key == "physical") physical_comps[c].push_back(parse_component(value, 3));
      else throw std::runtime_error("launch models: unknown key " + key);
    } else {
      throw std::runtime_error("launch models: line outside a known section: " + line);
    }
  }
  for (int c = 0; c < kNumLaunchClasses; ++c) {
    if (!orbital_comps[static_cast<std::size_t>(c)].empty()) {
      models.orbital[static_cast<std::size_t>(c)] =
          Gmm(2, orbital_comps[static_cast<std::size_t>(c)]);
    }
    if (!physical_comps[static_cast<std::size_t>(c)].empty()) {
      models.physical[static_cast<std::size_t>(c)] =
          Gmm(3, physical_comps[static_cast<std::size_t>(c)]);
    }
  }
  return models;
}

InjectReport inject_launches(NetworkState& state, double t_years, double dt_days,
                             const LaunchModels& models, Rng& rng) {
  InjectReport report;
  const double dt_years = dt_days / kDaysPerYear;
  const double expected = traffic_curve(t_years, models.traffic) * dt_years;
  if (!(expected >= 0.0)) throw std::invalid_argument("inject_launches: negative traffic rate");
  const std::int64_t count = rng.poisson(expected);
  if (count == 0) return report;

  const SiteGrid& grid = state.grid();
  std::map<int, long> per_node;
  double fraction_total = 0.0;
  for (double f : models.class_fractions) fraction_total += f;
  if (!(fraction_total > 0.0)) throw std::invalid_argument("inject_launches: zero class fractions");

  for (std::int64_t k = 0; k < count; ++k) {
    double u = rng.uniform() * fraction_total;
    int cls = kNumLaunchClasses - 1;
    for (int c = 0; c < kNumLaunchClasses; ++c) {
      u -= models.class_fractions[static_cast<std::size_t>(c)];
      if (u <= 0.0) {
        cls = c;
        break;
      }
    }
    const auto ci = static_cast<std::size_t>(cls);
    if (!models.orbital[ci] || !models.physical[ci]) continue;  // class never launched

    GmmPoint orb{};
    bool in_domain = false;
    for (int attempt = 0; attempt < 16 && !in_domain; ++attempt) {
      orb = models.orbital[ci]->sample(rng);
      const double alt = orb[0] - grid.r_earth_km();
      in_domain = alt >= grid.alt_min_km() && alt <= grid.alt_max_km() && orb[1] >= 0.0 &&
                  orb[1] <= 180.0;
    }
    if (!in_domain) {
      orb[0] = std::clamp(orb[0], grid.r_earth_km() + grid.alt_min_km(),
                          grid.r_earth_km() + grid.alt_max_km());
      orb[1] = std::clamp(orb[1], 0.0, 180.0);
      report.clamped++;
    }

    GmmPoint phys{};
    bool valid = false;
    for (int attempt = 0; attempt < 16 && !valid; ++attempt) {
      phys = models.physical[ci]->sample(rng);
      valid = phys[0] > 0.0 && phys[1] > 0.0 && phys[2] > 0.0;
    }
    if (!valid) {
      phys[0] = std::max(phys[0], 1.0);
      phys[1] = std::max(phys[1], 0.01);
      phys[2] = std::max(phys[2], 0.1);
      report.clamped++;
    }

    SpaceObject obj;
    obj.object_id = state.take_object_id();
    obj.species = launch_class_species(static_cast<LaunchClass>(cls));
    obj.a_km = orb[0];
    obj.ecc = 0.0;
    obj.inc_deg = orb[1];
    obj.mass_kg = phys[0];
    obj.area_m2 = phys[1];
    obj.radius_m = phys[2] / 2.0;
    obj.cd = 2.2;
    obj.mission_elapsed_years = 0.0;
    const int node = state.insert(std::move(obj));
    if (node >= 0) {
      per_node[node]++;
      report.per_class[ci]++;
      report.total++;
    }
  }
  report.per_node.assign(per_node.begin(), per_node.end());
  return report;
}

}  // namespace leonet
