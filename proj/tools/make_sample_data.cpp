// Generates the bundled sample data: an illustrative 2023-like LEO catalog
// with the documented per-class totals, the default density table, the
// breakup constants file and a synthetic launch history for fitting.
//
// The catalog is synthetic but structured like the real environment:
// constellation payload clusters, sun-synchronous traffic, rocket bodies on
// near-circular disposal orbits, derelicts drifted across altitude, and the
// big fragmentation clouds between 750 and 900 km. Species eccentricities
// differ on purpose: operational payloads and stages are circular, derelicts
// slightly eccentric, fragments carry their breakup kicks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leonet/breakup.hpp"
#include "leonet/catalog_io.hpp"
#include "leonet/decay.hpp"
#include "leonet/launch.hpp"
#include "leonet/rng.hpp"

using namespace leonet;

namespace {

struct Maker {
  Rng rng;
  std::vector<SpaceObject> out;
  std::int64_t next_id = 1;

  explicit Maker(std::uint64_t seed) : rng(seed) {}

  double clamp_alt(double alt) { return std::clamp(alt, 210.0, 2190.0); }
  double clamp_inc(double inc) { return std::clamp(inc, 0.1, 179.9); }

  void add(Species species, double alt_km, double inc_deg, double ecc, double mass_kg,
           double radius_m, double age_years = 0.0) {
    SpaceObject obj;
    obj.object_id = next_id++;
    obj.species = species;
    obj.a_km = kEarthRadiusKm + clamp_alt(alt_km);
    obj.ecc = std::clamp(ecc, 0.0, 0.3);
    obj.inc_deg = clamp_inc(inc_deg);
    obj.mass_kg = std::max(0.05, mass_kg);
    obj.radius_m = std::max(0.04, radius_m);
    obj.area_m2 = kPi * obj.radius_m * obj.radius_m;
    obj.cd = 2.2;
    obj.mission_elapsed_years = std::max(0.0, age_years);
    out.push_back(obj);
  }
};

// Inclination families weighted like the resident LEO population.
double sample_inclination(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.28) return rng.normal(53.1, 0.8);    // mid-inclination constellations
  if (u < 0.38) return rng.normal(63.6, 1.2);    // Molniya-heritage
  if (u < 0.55) return rng.normal(74.0, 1.0);    // legacy upper stages
  if (u < 0.72) return rng.normal(82.5, 1.0);    // polar weather/comms
  if (u < 0.93) return rng.normal(97.8, 1.3);    // sun-synchronous
  return rng.uniform(20.0, 145.0);
}

void make_payloads(Maker& m) {
  // Large mid-inclination constellation, tight altitude control mid-shell,
  // all still young.
  for (int k = 0; k < 3000; ++k) {
    m.add(Species::Payload, m.rng.normal(543.0, 2.5), m.rng.normal(53.1, 0.25), 0.0,
          m.rng.uniform(240.0, 300.0), 1.05, m.rng.uniform(0.0, 1.8));
  }
  // High-altitude comms constellation, still early in its deployment.
  for (int k = 0; k < 580; ++k) {
    m.add(Species::Payload, m.rng.normal(1190.0, 4.0), m.rng.normal(87.7, 0.2), 0.0,
          m.rng.uniform(140.0, 170.0), 0.85, m.rng.uniform(0.0, 2.0));
  }
  // Sun-synchronous operators: station-kept mission altitudes across the
  // disposal age spectrum.
  // Mass follows the body size (areal density 60-120 kg per m^2 of cross
  // section) so the ballistic coefficients stay in the operational range.
  const double sso_alts[] = {510, 525, 540, 560, 585, 620, 660, 705, 755, 790};
  for (int k = 0; k < 1280; ++k) {
    const double alt = sso_alts[m.rng.uniform_index(10)] + m.rng.normal(0.0, 1.5);
    const double radius = m.rng.uniform(0.7, 1.6);
    m.add(Species::Payload, alt, m.rng.normal(97.6, 1.1), 0.0,
          kPi * radius * radius * m.rng.uniform(60.0, 120.0), radius, m.rng.uniform(0.0, 5.0));
  }
  // Everything else, parked mid-shell at round mission altitudes; the
  // high-LEO entries are recent deployments.
  for (int k = 0; k < 611; ++k) {
    const double alt = 425.0 + 50.0 * static_cast<double>(m.rng.uniform_index(20)) +
                       m.rng.normal(0.0, 1.5);
    const double radius = m.rng.uniform(0.6, 1.8);
    m.add(Species::Payload, alt, sample_inclination(m.rng), 0.0,
          kPi * radius * radius * m.rng.uniform(60.0, 120.0), radius,
          alt > 950.0 ? m.rng.uniform(0.0, 3.0) : m.rng.uniform(0.0, 5.0));
  }
}

void make_upper_stages(Maker& m) {
  for (int k = 0; k < 1111; ++k) {
    const double u = m.rng.uniform();
    double alt, inc;
    if (u < 0.45) {  // legacy polar stages parked high
      alt = m.rng.uniform(850.0, 1050.0);
      inc = m.rng.normal(74.0 + 8.0 * m.rng.uniform(), 1.5);
    } else if (u < 0.75) {
      alt = m.rng.uniform(600.0, 900.0);
      inc = m.rng.normal(97.5, 1.5);
    } else {
      alt = m.rng.uniform(450.0, 1500.0);
      inc = sample_inclination(m.rng);
    }
    m.add(Species::UpperStage, alt, inc, 0.0, m.rng.uniform(1400.0, 4500.0),
          m.rng.uniform(1.6, 3.1));
  }
}

void make_derelicts(Maker& m) {
  for (int k = 0; k < 2440; ++k) {
    const double u = m.rng.uniform();
    double alt;
    if (u < 0.40) alt = m.rng.uniform(450.0, 700.0);
    else if (u < 0.85) alt = m.rng.uniform(700.0, 1000.0);
    else alt = m.rng.uniform(1000.0, 1500.0);
    const double inc = u < 0.2 ? m.rng.normal(65.0, 4.0)
                               : (u < 0.75 ? m.rng.normal(82.0, 8.0) : m.rng.normal(98.0, 2.0));
    m.add(Species::NonManoeuvrable, alt, inc, m.rng.uniform(0.002, 0.02),
          std::exp(m.rng.normal(6.9, 0.55)), m.rng.uniform(0.8, 1.8));
  }
}

void make_fragments(Maker& m, double radius_scale, double am_log10_shift) {
  // Three historical clouds plus a dispersed background; sizes follow the
  // tracked-fragment power law, area-to-mass a breakup-like lognormal.
  auto fragment = [&](double alt, double inc, double inc_sigma) {
    const double u = m.rng.uniform();
    // Cumulative d^-1.71 spectrum truncated to [0.1, 3] m.
    const double lo = std::pow(0.1, -1.71), hi = std::pow(3.0, -1.71);
    const double d = std::pow(lo - u * (lo - hi), -1.0 / 1.71) * radius_scale;
    const double area = 0.556945 * std::pow(d, 2.0047077);
    const double am = std::pow(10.0, m.rng.normal(-0.75 + am_log10_shift, 0.4));
    const double mass = area / am;
    m.add(Species::Fragment, alt, m.rng.normal(inc, inc_sigma),
          std::fabs(m.rng.normal(0.0, 0.02)) + 0.001, mass, d / 2.0);
  };
  for (int k = 0; k < 2400; ++k) {  // polar collision cloud
    fragment(m.rng.normal(780.0, 45.0), 86.4, 2.5);
  }
  for (int k = 0; k < 2200; ++k) {  // sun-synchronous ASAT cloud
    fragment(m.rng.normal(850.0, 60.0), 98.8, 2.5);
  }
  for (int k = 0; k < 1300; ++k) {  // mid-inclination stage breakups
    fragment(m.rng.normal(620.0, 80.0), 74.0, 4.0);
  }
  for (int k = 0; k < 3904; ++k) {  // dispersed background
    const double band = m.rng.uniform();
    double alt;
    if (band < 0.25) alt = m.rng.uniform(400.0, 650.0);
    else if (band < 0.8) alt = m.rng.uniform(650.0, 1050.0);
    else alt = m.rng.uniform(1050.0, 1600.0);
    fragment(alt, sample_inclination(m.rng), 3.0);
  }
}

void make_launch_history(const std::string& path, Rng& rng) {
  std::ofstream out(path);
  out << "epoch,class,a_km,i_deg,mass_kg,area_m2,length_m\n";
  char buf[256];
  for (int k = 0; k < 1500; ++k) {
    const double epoch = rng.uniform(-5.0, 0.0);
    const double u = rng.uniform();
    const char* cls;
    double alt, inc, mass, area, length;
    if (u < 0.72) {
      cls = "payload";
      if (rng.uniform() < 0.6) {
        alt = rng.normal(543.0, 4.0);
        inc = rng.normal(53.1, 0.4);
        mass = rng.uniform(240.0, 300.0);
      } else {
        alt = rng.uniform(480.0, 620.0);
        inc = rng.normal(97.6, 1.0);
        mass = std::exp(rng.normal(5.4, 0.8));
      }
      area = std::max(0.5, mass / 80.0);
      length = std::sqrt(area);
    } else if (u < 0.87) {
      cls = "upper_stage";
      alt = rng.uniform(500.0, 800.0);
      inc = rng.uniform() < 0.5 ? rng.normal(53.0, 1.0) : rng.normal(97.6, 1.2);
      mass = rng.uniform(1500.0, 4500.0);
      area = rng.uniform(8.0, 18.0);
      length = rng.uniform(6.0, 12.0);
    } else {
      cls = "mission_related";
      alt = rng.uniform(500.0, 800.0);
      inc = rng.uniform() < 0.5 ? rng.normal(53.0, 1.5) : rng.normal(97.6, 1.5);
      mass = std::exp(rng.normal(2.0, 1.0));
      area = std::max(0.05, mass / 50.0);
      length = std::sqrt(area);
    }
    std::snprintf(buf, sizeof(buf), "%.3f,%s,%.3f,%.3f,%.3f,%.4f,%.3f\n", epoch, cls,
                  kEarthRadiusKm + std::clamp(alt, 300.0, 1400.0), std::clamp(inc, 0.0, 180.0),
                  std::max(0.5, mass), area, std::max(0.2, length));
    out << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled sample data files"};
  std::string out_dir = "data";
  std::uint64_t seed = 20230301;
  double frag_radius_scale = 1.0;
  double frag_am_shift = 0.0;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Catalog RNG seed");
  app.add_option("--frag-radius-scale", frag_radius_scale, "Fragment size calibration factor");
  app.add_option("--frag-am-shift", frag_am_shift, "Fragment log10(A/m) shift");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);

  Maker maker(seed);
  make_payloads(maker);
  make_upper_stages(maker);
  make_derelicts(maker);
  make_fragments(maker, frag_radius_scale, frag_am_shift);
  save_population((dir / "population_2023.csv").string(), maker.out);

  long counts[4] = {0, 0, 0, 0};
  for (const SpaceObject& obj : maker.out) counts[static_cast<int>(obj.species)]++;
  std::printf("catalog: P %ld, U %ld, N %ld, F %ld, total %zu\n", counts[0], counts[1], counts[2],
              counts[3], maker.out.size());

  DensityModel::builtin_table().write_table_csv((dir / "density_table.csv").string());
  BreakupModelParams::builtin().save((dir / "breakup_params.txt").string());

  Rng history_rng(seed ^ 0x5eed);
  make_launch_history((dir / "launch_history_sample.csv").string(), history_rng);
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}
