#pragma once

#include <cstdint>
#include <string>

#include "leonet/constants.hpp"
#include "leonet/species.hpp"

namespace leonet {

// One resident object. Objects are kept individually inside nodes: the
// cross-section, breakup-mass and decay rules all need per-object radius,
// mass and area, so pure per-node counts would not be enough.
struct SpaceObject {
  std::int64_t object_id = 0;
  Species species = Species::Fragment;
  double a_km = 0.0;    // semi-major axis
  double ecc = 0.0;
  double inc_deg = 0.0;
  double mass_kg = 0.0;
  double radius_m = 0.0;  // characteristic radius; diameter d = 2 * radius
  double area_m2 = 0.0;   // average cross-sectional area
  double cd = 2.2;
  double mission_elapsed_years = 0.0;  // meaningful for payloads only

  double diameter_m() const { return 2.0 * radius_m; }
  double area_per_mass_m2_kg() const { return area_m2 / mass_kg; }
  double perigee_radius_km() const { return a_km * (1.0 - ecc); }
  double apogee_radius_km() const { return a_km * (1.0 + ecc); }
};

// Checks the structural invariants. Returns false and fills |why| (when
// non-null) on the first violated constraint.
bool validate(const SpaceObject& obj, std::string* why = nullptr,
              double r_earth_km = kEarthRadiusKm);

}  // namespace leonet
