#pragma once

#include <array>
#include <string>
#include <vector>

#include "leonet/space_object.hpp"

namespace leonet {

struct CatalogLoadReport {
  long accepted = 0;
  std::array<long, kNumSpecies> per_species{0, 0, 0, 0};
  std::vector<std::string> rejected;  // "<line>: <reason>"
  std::vector<std::string> warnings;
};

// CSV columns (order free, resolved by header):
// object_id,class,a_km,e,i_deg,mass_kg,radius_m,area_m2,cd,age_years
// age_years is optional and defaults to 0; unknown columns warn once and
// are ignored. Rows violating the object invariants are skipped with a
// line-numbered diagnostic; a malformed header is a hard error.
std::vector<SpaceObject> load_population(const std::string& path,
                                         CatalogLoadReport* report = nullptr,
                                         double r_earth_km = kEarthRadiusKm);

void save_population(const std::string& path, const std::vector<SpaceObject>& population);

}  // namespace leonet
