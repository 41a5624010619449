#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/discovery.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"

namespace forge::kg {

using Iri = std::string;

// Dataset IRI of the document holding records of `records_class`.
Iri document_iri(std::string_view records_class);

// One document per instantiated domain class. Columns are the identifier plus
// one column per predicate seen on the class's instances; literal objects give
// attribute columns, IRI objects give reference columns. Column names and
// order follow the source layout recorded at ingestion where available;
// other predicates come after, sorted by name. Rows are sorted by identifier.
//
// Throws EmptyKgError, MixedObjectTypesError, UnidentifiableObjectError and
// the validate_bundle errors.
ccsv::CcsvBundle serialize_kg(const rdf::Graph& kg, const vocab::VocabularyRegistry& reg);

struct SerializationResult {
  ccsv::CcsvBundle bundle;
  std::vector<discovery::SuitabilityResult> results;
  rdf::Graph discovered;
};

// serialize_kg followed by discovery over the validated bundle.
SerializationResult serialize_and_discover(const rdf::Graph& kg,
                                           const vocab::VocabularyRegistry& reg,
                                           const std::vector<vocab::IndicatorDef>& catalog);

inline constexpr const char* kDiscoveredFile = "discovered-indicators.ttl";

// Writes {name}.ccsv per document and discovered-indicators.ttl. Returns the
// file names written, in order.
std::vector<std::string> write_output(const std::filesystem::path& dir,
                                      const ccsv::CcsvBundle& bundle,
                                      const rdf::Graph& discovered);

// Reads every *.ccsv in `dir` and validates them as one bundle; the shared
// metadata is the union of the preambles' provenance triples.
ccsv::CcsvBundle load_bundle(const std::filesystem::path& dir);

}  // namespace forge::kg
