#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"

namespace forge::ingest {

using Iri = std::string;

enum class AcquisitionKind { kNative, kManualAnnotation };

std::string_view to_string(AcquisitionKind kind);
std::optional<AcquisitionKind> acquisition_kind_from_string(std::string_view s);

// The ICT system that produced the data and the software (or device) that
// annotated it.
struct DataSource {
  Iri platform_iri;
  std::string platform_label;
  std::string annotator_label;
};

struct StudyInfo {
  Iri iri;
  std::string label;
};

// ISO-8601 UTC instants, e.g. "2016-07-01T00:00:00Z".
struct TimeFrame {
  std::string start;
  std::string end;
};

// Raw answers to the four characterization questions; any may be missing.
struct CharacterizationAnswers {
  std::optional<DataSource> data_source;
  std::optional<AcquisitionKind> acquisition_kind;
  std::optional<StudyInfo> study;
  std::optional<TimeFrame> time_frame;
};

struct DatasetCharacterization {
  DataSource data_source;
  AcquisitionKind acquisition_kind = AcquisitionKind::kManualAnnotation;
  StudyInfo study;
  TimeFrame time_frame;
};

// Throws IncompleteCharacterizationError naming the missing aspect
// (data_source, acquisition_kind, study, time_frame) or
// InvalidCharacterizationError for malformed instants, start > end or bad
// IRIs.
DatasetCharacterization characterize(const CharacterizationAnswers& answers);

struct ColumnMapping {
  std::string column;  // header name
  ccsv::ColumnRole role;
  std::optional<std::string> value_separator;
  std::optional<Iri> datatype;
  std::optional<std::string> language;
};

// How the columns of one raw CSV map onto the domain ontology. Header columns
// that are not mapped are ignored.
struct IngestMapping {
  Iri records_class;
  std::vector<ColumnMapping> columns;
};

// Loads one CSV into a copy of `kg`, adding the provenance scaffolding
// (platform, instrument, deployment, study, acquisition, dataset node) and one
// typed instance per row.
//
// Throws HeaderMismatchError, UnknownPropertyError, UnknownClassError,
// MappingError, DuplicateIdentifierError, RowWidthError, CsvSyntaxError.
rdf::Graph load_dataset(std::string_view csv_text, const IngestMapping& mapping,
                        const DatasetCharacterization& ch, const rdf::Graph& kg,
                        const vocab::VocabularyRegistry& reg);

// Instance IRIs: {class namespace}inst/{class local name}/{percent-encoded id}.
Iri mint_instance(std::string_view entity_class, std::string_view id);
// Inverse of mint_instance: (class IRI, identifier).
std::optional<std::pair<Iri, std::string>> parse_instance(std::string_view iri);

// Scaffolding node IRIs.
Iri dataset_node(std::string_view records_class);
Iri acquisition_node(std::string_view records_class);
Iri deployment_node(const DataSource& source);
Iri instrument_node(const DataSource& source);

// Mapping equivalent to a document's own column bindings, for re-ingesting a
// serialized bundle. Throws MappingError when a reference column has no link
// property.
IngestMapping mapping_from_document(const ccsv::CcsvDocument& doc);

}  // namespace forge::ingest
