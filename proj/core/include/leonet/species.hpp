#pragma once

#include <cstdint>
#include <optional>

namespace leonet {

// The four object classes tracked by the model.
enum class Species : std::uint8_t {
  Payload = 0,         // P: active, manoeuvrable satellites
  UpperStage = 1,      // U: spent rocket bodies
  NonManoeuvrable = 2, // N: derelict/failed satellites
  Fragment = 3,        // F: trackable breakup fragments
};

inline constexpr int kNumSpecies = 4;

inline constexpr Species kAllSpecies[kNumSpecies] = {
    Species::Payload, Species::UpperStage, Species::NonManoeuvrable, Species::Fragment};

inline char species_code(Species s) {
  switch (s) {
    case Species::Payload: return 'P';
    case Species::UpperStage: return 'U';
    case Species::NonManoeuvrable: return 'N';
    case Species::Fragment: return 'F';
  }
  return '?';
}

inline std::optional<Species> species_from_code(char c) {
  switch (c) {
    case 'P': case 'p': return Species::Payload;
    case 'U': case 'u': return Species::UpperStage;
    case 'N': case 'n': return Species::NonManoeuvrable;
    case 'F': case 'f': return Species::Fragment;
    default: return std::nullopt;
  }
}

}  // namespace leonet
