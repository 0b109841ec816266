#include "leonet/catalog_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leonet {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      cells.emplace_back();
    } else {
      cells.push_back(cell.substr(first, cell.find_last_not_of(" \t\r") - first + 1));
    }
  }
  return cells;
}

}  // namespace

std::vector<SpaceObject> load_population(const std::string& path, CatalogLoadReport* report,
                                         double r_earth_km) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_population: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_population: missing header row");

  const std::vector<std::string> header = split_csv(line);
  int col_id = -1, col_class = -1, col_a = -1, col_e = -1, col_i = -1, col_mass = -1,
      col_radius = -1, col_area = -1, col_cd = -1, col_age = -1;
  CatalogLoadReport local;
  CatalogLoadReport& rep = report ? *report : local;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    const int idx = static_cast<int>(c);
    if (name == "object_id") col_id = idx;
    else if (name == "class") col_class = idx;
    else if (name == "a_km") col_a = idx;
    else if (name == "e") col_e = idx;
    else if (name == "i_deg") col_i = idx;
    else if (name == "mass_kg") col_mass = idx;
    else if (name == "radius_m") col_radius = idx;
    else if (name == "area_m2") col_area = idx;
    else if (name == "cd") col_cd = idx;
    else if (name == "age_years") col_age = idx;
    else rep.warnings.push_back("ignoring unknown column '" + name + "'");
  }
  for (int required : {col_id, col_class, col_a, col_e, col_i, col_mass, col_radius, col_area,
                       col_cd}) {
    if (required < 0) {
      throw std::runtime_error("load_population: malformed header, need columns "
                               "object_id,class,a_km,e,i_deg,mass_kg,radius_m,area_m2,cd");
    }
  }

  std::vector<SpaceObject> out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    auto cell = [&](int col) -> const std::string& {
      static const std::string empty;
      return col >= 0 && col < static_cast<int>(cells.size()) ? cells[static_cast<std::size_t>(col)]
                                                              : empty;
    };
    SpaceObject obj;
    std::string why;
    try {
      obj.object_id = std::stoll(cell(col_id));
      const std::string& cls = cell(col_class);
      const auto species = cls.empty() ? std::nullopt : species_from_code(cls[0]);
      if (!species) throw std::runtime_error("unknown class '" + cls + "'");
      obj.species = *species;
      obj.a_km = std::stod(cell(col_a));
      obj.ecc = std::stod(cell(col_e));
      obj.inc_deg = std::stod(cell(col_i));
      obj.mass_kg = std::stod(cell(col_mass));
      obj.radius_m = std::stod(cell(col_radius));
      obj.area_m2 = std::stod(cell(col_area));
      obj.cd = std::stod(cell(col_cd));
      obj.mission_elapsed_years = col_age >= 0 && !cell(col_age).empty() ? std::stod(cell(col_age)) : 0.0;
    } catch (const std::exception& ex) {
      rep.rejected.push_back(std::to_string(line_no) + ": " + ex.what());
      continue;
    }
    if (!validate(obj, &why, r_earth_km)) {
      rep.rejected.push_back(std::to_string(line_no) + ": " + why);
      continue;
    }
    rep.per_species[static_cast<std::size_t>(obj.species)]++;
    rep.accepted++;
    out.push_back(obj);
  }
  return out;
}

void save_population(const std::string& path, const std::vector<SpaceObject>& population) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_population: cannot open " + path);
  out << "object_id,class,a_km,e,i_deg,mass_kg,radius_m,area_m2,cd,age_years\n";
  char buf[320];
  for (const SpaceObject& obj : population) {
    std::snprintf(buf, sizeof(buf), "%lld,%c,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(obj.object_id), species_code(obj.species), obj.a_km,
                  obj.ecc, obj.inc_deg, obj.mass_kg, obj.radius_m, obj.area_m2, obj.cd,
                  obj.mission_elapsed_years);
    out << buf;
  }
}

}  // namespace leonet
