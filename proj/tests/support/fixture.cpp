#include "fixture.hpp"

#include <atomic>

#include <unistd.h>

#include "forge/io.hpp"

namespace forge::testing {

std::filesystem::path source_path(std::string_view relative) {
  return std::filesystem::path(FORGE_SOURCE_DIR) / relative;
}

std::string read_source(std::string_view relative) { return io::read_file(source_path(relative)); }

std::string fixture_csv(std::string_view name) {
  return read_source("data/fixtures/" + std::string(name) + ".csv");
}

wire::DatasetConfig fixture_config(std::string_view name) {
  return wire::dataset_config_from_json(
      wire::parse(read_source("data/fixtures/" + std::string(name) + ".json")));
}

ingest::DatasetCharacterization fixture_characterization() {
  return ingest::characterize(fixture_config("stations").answers);
}

rdf::Graph fixture_kg(const vocab::VocabularyRegistry& reg) {
  rdf::Graph kg;
  for (const char* name : {"stations", "trips"}) {
    auto cfg = fixture_config(name);
    kg = ingest::load_dataset(fixture_csv(name), cfg.mapping, ingest::characterize(cfg.answers),
                              kg, reg);
  }
  return kg;
}

std::filesystem::path temp_dir(std::string_view tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("forge-" + std::string(tag) + "-" + std::to_string(::getpid()) + "-" +
              std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace forge::testing
