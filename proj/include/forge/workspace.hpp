#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/dashboard.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"
#include "forge/wire.hpp"

namespace forge::workspace {

// Layout of the data directory:
//   kg.ttl                       the city KG
//   datasets/{id}.csv, {id}.json raw uploads and their configs
//   bundle/*.ccsv                the last serialization
//   bundle/discovered-indicators.ttl
//   bundle/manifest.json
//   dashboards/{id}.json
struct Snapshot {
  rdf::Graph kg;
  std::vector<std::string> datasets;  // sorted ids
  std::shared_ptr<const ccsv::CcsvBundle> bundle;  // null before serialization
  std::optional<rdf::Graph> discovered;
  std::optional<std::string> manifest;  // JSON text
  std::map<std::string, dashboard::DashboardSpec> dashboards;
};

struct Options {
  std::optional<rdf::Graph> catalog;  // defaults to the sample catalog
  std::vector<rdf::Graph> extra_ontologies;
};

// Readers work on published snapshots; mutations are serialized and publish a
// new snapshot when they succeed. A failed mutation leaves state unchanged.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path data_dir, Options options = {});

  std::shared_ptr<const Snapshot> snapshot() const;
  const vocab::VocabularyRegistry& registry() const noexcept { return registry_; }
  const std::vector<vocab::IndicatorDef>& catalog() const noexcept { return catalog_; }
  const std::filesystem::path& data_dir() const noexcept { return dir_; }

  // Returns the dataset id. ConflictError when the id is taken; ConfigError
  // for a malformed id; the characterize/load_dataset errors otherwise.
  std::string ingest(const std::string& csv_text, const wire::DatasetConfig& config);

  // Serializes the KG, runs discovery and persists the bundle. Returns the
  // manifest. EmptyKgError when nothing is ingested.
  std::string serialize();

  // Generated visualizations merged with `edits`; edits win on id collision.
  // NotFoundError before serialization, ConflictError for a taken id.
  dashboard::DashboardSpec create_dashboard(std::optional<std::string> id,
                                            std::optional<std::string> title,
                                            const std::vector<dashboard::VizSpec>& edits);

  dashboard::DashboardSpec get_dashboard(const std::string& id) const;
  dashboard::AggregateResult query(const std::string& dashboard_id, const std::string& viz_id,
                                   const std::vector<dashboard::FilterExpr>& filters) const;
  std::map<std::string, dashboard::AggregateResult> select(
      const std::string& dashboard_id, const std::vector<dashboard::FilterExpr>& selection) const;

  // Structured form of the discovered indicators: indicator definitions plus
  // the documents covering each spec. NotFoundError before serialization.
  wire::json discovered_json() const;

 private:
  void load_state();
  void publish(std::shared_ptr<const Snapshot> next);
  std::shared_ptr<const ccsv::CcsvBundle> require_bundle(const Snapshot& s) const;

  std::filesystem::path dir_;
  vocab::VocabularyRegistry registry_;
  std::vector<vocab::IndicatorDef> catalog_;

  std::mutex write_mu_;
  mutable std::mutex snap_mu_;
  std::shared_ptr<const Snapshot> snap_;
};

// Manifest of a serialization: documents, classes, provenance summary and
// suitable indicators. Deterministic for equal inputs.
std::string manifest_json(const ccsv::CcsvBundle& bundle, const rdf::Graph& discovered,
                          const std::vector<std::string>& files,
                          const vocab::VocabularyRegistry& reg);

}  // namespace forge::workspace
