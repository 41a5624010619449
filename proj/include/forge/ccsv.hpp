#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forge/csv.hpp"
#include "forge/rdf.hpp"

// Contextualized CSV: a Turtle preamble, a line that is exactly "---", then an
// RFC-4180 CSV header and rows. The preamble names the class of the records
// (ccsv:containsRecordsOf) and binds columns to KG entities:
//
//   kg:ccsv/Bicycle-Share_Trip ccsv:containsRecordsOf qoe-m:Bicycle-Share_Trip ;
//       ccsv:hasColumn <.../column/1>, <.../column/2> .
//   <.../column/1> ccsv:columnIndex 1 ; ccsv:columnName "id" ;
//       ccsv:isIdentifierFor qoe-m:Bicycle-Share_Trip .
//   <.../column/2> ccsv:columnIndex 2 ; ccsv:columnName "origin_station_id" ;
//       ccsv:references qoe-m:Bicycle-Share_Station ;
//       ccsv:linkProperty qoe-m:originStation .
namespace forge::ccsv {

using Iri = std::string;

inline constexpr std::string_view kSeparatorLine = "---";
inline constexpr std::string_view kDefaultValueSeparator = "|";

struct IdentifierRole {
  Iri entity_class;
  bool operator==(const IdentifierRole&) const = default;
};
struct AttributeRole {
  Iri property;
  bool operator==(const AttributeRole&) const = default;
};
struct ReferenceRole {
  Iri target_class;
  std::optional<Iri> property;
  bool operator==(const ReferenceRole&) const = default;
};
using ColumnRole = std::variant<IdentifierRole, AttributeRole, ReferenceRole>;

struct ColumnBinding {
  std::size_t index = 1;  // 1-based
  std::string name;
  ColumnRole role;
  // Multi-valued cells are split on this separator.
  std::optional<std::string> value_separator;
  std::optional<Iri> datatype;
  std::optional<std::string> language;

  bool is_identifier() const { return std::holds_alternative<IdentifierRole>(role); }
  bool is_reference() const { return std::holds_alternative<ReferenceRole>(role); }
  bool operator==(const ColumnBinding&) const = default;
};

// Splits a multi-valued cell; `\` escapes the separator and itself.
std::vector<std::string> split_values(std::string_view cell, std::string_view separator);
std::string join_values(const std::vector<std::string>& values, std::string_view separator);

// Everything needed to assemble a document. `metadata` is copied into the
// preamble alongside the generated binding triples.
struct DocumentParts {
  Iri dataset_iri;
  Iri records_class;
  std::vector<ColumnBinding> bindings;
  csv::Row header;
  std::vector<csv::Row> rows;
  rdf::Graph metadata;
};

class CcsvDocument {
 public:
  // Validates the preamble's bindings against the header and rows.
  static CcsvDocument create(rdf::Graph preamble, csv::Row header,
                             std::vector<csv::Row> rows);
  // Generates the preamble from the parts' bindings, then validates.
  static CcsvDocument build(DocumentParts parts);

  const rdf::Graph& preamble() const noexcept { return preamble_; }
  const Iri& dataset_iri() const noexcept { return dataset_iri_; }
  const Iri& records_class() const noexcept { return records_class_; }
  const std::vector<ColumnBinding>& bindings() const noexcept { return bindings_; }
  const csv::Row& header() const noexcept { return header_; }
  const std::vector<csv::Row>& rows() const noexcept { return rows_; }

  // Local name of the records class; the document's file stem.
  std::string name() const;
  const ColumnBinding& identifier() const;
  // Binding for a header name, or nullptr for unbound/unknown columns.
  const ColumnBinding* binding_for(std::string_view column) const;
  std::optional<std::size_t> column_position(std::string_view column) const;

 private:
  CcsvDocument() = default;

  rdf::Graph preamble_;
  Iri dataset_iri_;
  Iri records_class_;
  std::vector<ColumnBinding> bindings_;  // sorted by index
  csv::Row header_;
  std::vector<csv::Row> rows_;
};

// Documents are equal when preambles are isomorphic and everything else
// matches exactly.
bool equivalent(const CcsvDocument& a, const CcsvDocument& b);

// Binding triples for a dataset node, shared with ingestion which records the
// source layout of every loaded dataset in the KG.
void write_binding_triples(const Iri& dataset_iri, const Iri& records_class,
                           const std::vector<ColumnBinding>& bindings, rdf::Graph& out);

// Column bindings attached to `dataset_iri` via ccsv:hasColumn, sorted by
// index. Only the binding vocabulary is checked, not a header.
std::vector<ColumnBinding> read_column_bindings(const rdf::Graph& g, const Iri& dataset_iri);

// Throws MissingSeparatorError, BindingError, RowWidthError, CsvSyntaxError
// and Turtle parse errors.
CcsvDocument read_ccsv(std::string_view text);
std::string write_ccsv(const CcsvDocument& doc);

// The serialized KG: one document per records class plus the provenance
// metadata (study, deployments, acquisitions) shared by the documents.
struct CcsvBundle {
  std::vector<CcsvDocument> documents;  // sorted by records class
  rdf::Graph shared_metadata;

  const CcsvDocument* find(std::string_view name) const;
  const CcsvDocument* find_by_dataset(std::string_view dataset_iri) const;
  const CcsvDocument* find_by_class(std::string_view records_class) const;
};

// Resolves cross-document references and checks the provenance shape.
// References to classes without a document in the bundle are external links
// and are not checked. Throws DanglingReferenceError, ProvenanceShapeError,
// DuplicateDocumentError.
CcsvBundle validate_bundle(std::vector<CcsvDocument> documents, rdf::Graph shared_metadata);

// Provenance triples found in a preamble: every triple whose subject is typed
// with a hasco/vstoi/hacito/prov class, excluding dataset nodes.
rdf::Graph extract_provenance(const rdf::Graph& preamble);

}  // namespace forge::ccsv
