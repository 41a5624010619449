#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "forge/dashboard.hpp"
#include "forge/discovery.hpp"
#include "forge/ingest.hpp"
#include "forge/vocab.hpp"

// JSON encodings of the pipeline types. Field names follow the C++ members.
// Decoders throw ConfigError on malformed documents.
namespace forge::wire {

using json = nlohmann::ordered_json;

json to_json(const vocab::IndicatorDef& def);
json to_json(const discovery::SuitabilityResult& r);
json to_json(const dashboard::VizSpec& viz);
json to_json(const dashboard::DashboardSpec& spec);
json to_json(const dashboard::FilterExpr& f);
json to_json(const dashboard::AggregateResult& r);

dashboard::VizSpec viz_from_json(const json& j);
dashboard::DashboardSpec dashboard_from_json(const json& j);
dashboard::FilterExpr filter_from_json(const json& j);
std::vector<dashboard::FilterExpr> filters_from_json(const json& j);

// Dataset configuration:
//
//   {
//     "id": "stations",
//     "mapping": {
//       "records_class": "qoe-m:Bicycle-Share_Station",
//       "columns": [
//         {"column": "id", "role": "identifier"},
//         {"column": "lat", "role": "attribute", "property": "qoe-m:lat",
//          "datatype": "xsd:decimal"},
//         {"column": "origin", "role": "reference", "property": "qoe-m:originStation",
//          "target_class": "qoe-m:Bicycle-Share_Station"}
//       ]
//     },
//     "characterization": {
//       "data_source": {"platform_iri": ..., "platform_label": ..., "annotator_label": ...},
//       "acquisition_kind": "manual_annotation" | "native",
//       "study": {"iri": ..., "label": ...},
//       "time_frame": {"start": "2016-07-01T00:00:00Z", "end": ...}
//     }
//   }
//
// IRIs may be prefixed names over the standard prefixes. Columns may also
// carry "value_separator" and "language". Missing characterization aspects
// are left empty for characterize() to report.
struct DatasetConfig {
  std::string id;
  ingest::IngestMapping mapping;
  ingest::CharacterizationAnswers answers;
};

DatasetConfig dataset_config_from_json(const json& j);
json to_json(const DatasetConfig& c);

// Parses text as JSON, turning parse failures into ConfigError.
json parse(const std::string& text);

}  // namespace forge::wire
