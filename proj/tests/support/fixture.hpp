#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "forge/ccsv.hpp"
#include "forge/ingest.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"
#include "forge/wire.hpp"

namespace forge::testing {

std::filesystem::path source_path(std::string_view relative);
std::string read_source(std::string_view relative);

// "stations" or "trips" from data/fixtures.
std::string fixture_csv(std::string_view name);
wire::DatasetConfig fixture_config(std::string_view name);
ingest::DatasetCharacterization fixture_characterization();

// Stations then trips, ingested into an empty graph.
rdf::Graph fixture_kg(const vocab::VocabularyRegistry& reg);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(std::string_view tag);

inline const std::string kStationClass = "http://hadatac.org/ont/qoe-m#Bicycle-Share_Station";
inline const std::string kTripClass = "http://hadatac.org/ont/qoe-m#Bicycle-Share_Trip";
inline const std::string kUserClass = "http://hadatac.org/ont/qoe-m#User";

}  // namespace forge::testing
