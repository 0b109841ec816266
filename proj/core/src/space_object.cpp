#include "leonet/space_object.hpp"

namespace leonet {

namespace {
bool fail(std::string* why, const char* msg) {
  if (why) *why = msg;
  return false;
}
}  // namespace

bool validate(const SpaceObject& obj, std::string* why, double r_earth_km) {
  if (!(obj.a_km > r_earth_km)) return fail(why, "semi-major axis must exceed the Earth radius");
  if (!(obj.ecc >= 0.0 && obj.ecc < 1.0)) return fail(why, "eccentricity must lie in [0, 1)");
  if (!(obj.inc_deg >= 0.0 && obj.inc_deg <= 180.0)) return fail(why, "inclination must lie in [0, 180] deg");
  if (!(obj.mass_kg > 0.0)) return fail(why, "mass must be positive");
  if (!(obj.radius_m > 0.0)) return fail(why, "radius must be positive");
  if (!(obj.area_m2 > 0.0)) return fail(why, "area must be positive");
  if (!(obj.cd > 0.0)) return fail(why, "drag coefficient must be positive");
  if (!(obj.mission_elapsed_years >= 0.0)) return fail(why, "mission age must be non-negative");
  return true;
}

}  // namespace leonet
