#include "forge/ccsv.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "forge/error.hpp"
#include "forge/namespaces.hpp"
#include "forge/turtle.hpp"

namespace forge::ccsv {

namespace {

using rdf::Term;

Term ccsv(std::string_view local) { return rdf::iri(ns::kCcsv, local); }

std::optional<Term> single_object(const rdf::Graph& g, const Term& s,
                                  std::string_view local) {
  auto objs = g.objects(s, ccsv(local));
  if (objs.empty()) return std::nullopt;
  if (objs.size() > 1) {
    throw BindingError(s.to_string() + " has more than one ccsv:" + std::string(local));
  }
  return objs.front();
}

std::size_t parse_index(const Term& col, const Term& t) {
  std::size_t value = 0;
  const std::string& s = t.value();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (!t.is_literal() || ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    throw BindingError(col.to_string() + ": ccsv:columnIndex must be a positive integer, got " +
                       t.to_string());
  }
  return value;
}

ColumnBinding read_binding(const rdf::Graph& g, const Term& col) {
  ColumnBinding b;
  auto index = single_object(g, col, "columnIndex");
  if (!index) throw BindingError(col.to_string() + " has no ccsv:columnIndex");
  b.index = parse_index(col, *index);
  if (auto name = single_object(g, col, "columnName")) b.name = name->value();

  auto identifier = single_object(g, col, "isIdentifierFor");
  auto attribute = single_object(g, col, "isAttributeOf");
  auto reference = single_object(g, col, "references");
  int roles = int(identifier.has_value()) + int(attribute.has_value()) +
              int(reference.has_value());
  if (roles != 1) {
    throw BindingError(col.to_string() +
                       " must have exactly one of ccsv:isIdentifierFor, "
                       "ccsv:isAttributeOf, ccsv:references");
  }
  auto require_iri = [&](const Term& t) {
    if (!t.is_iri()) throw BindingError(col.to_string() + ": expected an IRI, got " + t.to_string());
    return t.value();
  };
  if (identifier) {
    b.role = IdentifierRole{require_iri(*identifier)};
  } else if (attribute) {
    b.role = AttributeRole{require_iri(*attribute)};
  } else {
    ReferenceRole r{require_iri(*reference), std::nullopt};
    if (auto p = single_object(g, col, "linkProperty")) r.property = require_iri(*p);
    b.role = std::move(r);
  }
  if (auto sep = single_object(g, col, "valueSeparator")) {
    if (sep->value().empty()) throw BindingError(col.to_string() + ": empty ccsv:valueSeparator");
    b.value_separator = sep->value();
  }
  if (auto dt = single_object(g, col, "datatype")) b.datatype = require_iri(*dt);
  if (auto lang = single_object(g, col, "language")) b.language = lang->value();
  return b;
}

}  // namespace

std::vector<std::string> split_values(std::string_view cell, std::string_view separator) {
  std::vector<std::string> out;
  if (cell.empty()) return out;
  std::string current;
  for (std::size_t i = 0; i < cell.size();) {
    if (cell[i] == '\\' && i + 1 < cell.size()) {
      current += cell[i + 1];
      i += 2;
    } else if (cell.substr(i, separator.size()) == separator) {
      out.push_back(std::move(current));
      current.clear();
      i += separator.size();
    } else {
      current += cell[i++];
    }
  }
  out.push_back(std::move(current));
  return out;
}

std::string join_values(const std::vector<std::string>& values, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += separator;
    const std::string& v = values[i];
    for (std::size_t j = 0; j < v.size();) {
      if (v[j] == '\\') {
        out += "\\\\";
        ++j;
      } else if (v.compare(j, separator.size(), separator) == 0) {
        for (char c : separator) {
          out += '\\';
          out += c;
        }
        j += separator.size();
      } else {
        out += v[j++];
      }
    }
  }
  return out;
}

std::vector<ColumnBinding> read_column_bindings(const rdf::Graph& g, const Iri& dataset_iri) {
  std::vector<ColumnBinding> out;
  for (const Term& col : g.objects(Term::iri(dataset_iri), ccsv("hasColumn"))) {
    if (col.is_literal()) throw BindingError("ccsv:hasColumn object is a literal");
    out.push_back(read_binding(g, col));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return out;
}

CcsvDocument CcsvDocument::create(rdf::Graph preamble, csv::Row header,
                                  std::vector<csv::Row> rows) {
  CcsvDocument doc;
  const Term contains = ccsv("containsRecordsOf");
  std::vector<const rdf::Triple*> decls;
  for (const auto& t : preamble) {
    if (t.predicate == contains) decls.push_back(&t);
  }
  if (decls.size() != 1) {
    throw BindingError("preamble must contain exactly one ccsv:containsRecordsOf triple, found " +
                       std::to_string(decls.size()));
  }
  const Term dataset = decls.front()->subject;
  if (!dataset.is_iri() || !decls.front()->object.is_iri()) {
    throw BindingError("ccsv:containsRecordsOf must link two IRIs");
  }
  doc.dataset_iri_ = dataset.value();
  doc.records_class_ = decls.front()->object.value();

  std::set<std::size_t> seen;
  std::size_t identifiers = 0;
  for (ColumnBinding b : read_column_bindings(preamble, doc.dataset_iri_)) {
    if (b.index > header.size()) {
      throw BindingError("column index " + std::to_string(b.index) +
                         " out of range for a header of width " +
                         std::to_string(header.size()));
    }
    if (!seen.insert(b.index).second) {
      throw BindingError("column index " + std::to_string(b.index) + " bound twice");
    }
    const std::string& header_name = header[b.index - 1];
    if (b.name.empty()) {
      b.name = header_name;
    } else if (b.name != header_name) {
      throw BindingError("column " + std::to_string(b.index) + " is named '" + b.name +
                         "' in the preamble but '" + header_name + "' in the header");
    }
    if (const auto* id = std::get_if<IdentifierRole>(&b.role)) {
      ++identifiers;
      if (id->entity_class != doc.records_class_) {
        throw BindingError("identifier column is bound to " + id->entity_class +
                           ", records are " + doc.records_class_);
      }
    }
    doc.bindings_.push_back(std::move(b));
  }
  if (identifiers != 1) {
    throw BindingError("expected exactly one identifier column, found " +
                       std::to_string(identifiers));
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw RowWidthError(i + 1, header.size(), rows[i].size());
    }
  }
  doc.preamble_ = std::move(preamble);
  doc.header_ = std::move(header);
  doc.rows_ = std::move(rows);
  return doc;
}

void write_binding_triples(const Iri& dataset_iri, const Iri& records_class,
                           const std::vector<ColumnBinding>& bindings, rdf::Graph& out) {
  const Term dataset = Term::iri(dataset_iri);
  out.add(dataset, ccsv("containsRecordsOf"), Term::iri(records_class));
  for (const auto& b : bindings) {
    const Term col = Term::iri(dataset_iri + "/column/" + std::to_string(b.index));
    out.add(dataset, ccsv("hasColumn"), col);
    out.add(col, ccsv("columnIndex"), rdf::typed(std::to_string(b.index), "integer"));
    out.add(col, ccsv("columnName"), rdf::str(b.name));
    std::visit(
        [&](const auto& role) {
          using T = std::decay_t<decltype(role)>;
          if constexpr (std::is_same_v<T, IdentifierRole>) {
            out.add(col, ccsv("isIdentifierFor"), Term::iri(role.entity_class));
          } else if constexpr (std::is_same_v<T, AttributeRole>) {
            out.add(col, ccsv("isAttributeOf"), Term::iri(role.property));
          } else {
            out.add(col, ccsv("references"), Term::iri(role.target_class));
            if (role.property) out.add(col, ccsv("linkProperty"), Term::iri(*role.property));
          }
        },
        b.role);
    if (b.value_separator) out.add(col, ccsv("valueSeparator"), rdf::str(*b.value_separator));
    if (b.datatype) out.add(col, ccsv("datatype"), Term::iri(*b.datatype));
    if (b.language) out.add(col, ccsv("language"), rdf::str(*b.language));
  }
}

CcsvDocument CcsvDocument::build(DocumentParts parts) {
  rdf::Graph preamble = std::move(parts.metadata);
  for (const auto& [label, ns] : ns::standard_prefixes()) {
    if (!preamble.prefixes().contains(label)) preamble.set_prefix(label, ns);
  }
  write_binding_triples(parts.dataset_iri, parts.records_class, parts.bindings, preamble);
  return create(std::move(preamble), std::move(parts.header), std::move(parts.rows));
}

std::string CcsvDocument::name() const { return ns::local_name(records_class_); }

const ColumnBinding& CcsvDocument::identifier() const {
  for (const auto& b : bindings_) {
    if (b.is_identifier()) return b;
  }
  // create() guarantees an identifier binding.
  throw BindingError("document has no identifier column");
}

const ColumnBinding* CcsvDocument::binding_for(std::string_view column) const {
  for (const auto& b : bindings_) {
    if (b.name == column) return &b;
  }
  return nullptr;
}

std::optional<std::size_t> CcsvDocument::column_position(std::string_view column) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == column) return i;
  }
  return std::nullopt;
}

bool equivalent(const CcsvDocument& a, const CcsvDocument& b) {
  return a.dataset_iri() == b.dataset_iri() && a.records_class() == b.records_class() &&
         a.bindings() == b.bindings() && a.header() == b.header() && a.rows() == b.rows() &&
         rdf::isomorphic(a.preamble(), b.preamble());
}

CcsvDocument read_ccsv(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line = 1;
  std::optional<std::size_t> separator_start;
  std::size_t body_start = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view content =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    if (content == kSeparatorLine) {
      separator_start = pos;
      body_start = eol == std::string_view::npos ? text.size() : eol + 1;
      break;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line;
  }
  if (!separator_start) {
    throw MissingSeparatorError("no line consisting of '---' separates the preamble from the CSV");
  }
  rdf::Graph preamble = rdf::parse_turtle(text.substr(0, *separator_start));
  auto records = csv::parse(text.substr(body_start), line + 1);
  csv::Row header;
  if (!records.empty()) {
    header = std::move(records.front());
    records.erase(records.begin());
  }
  return CcsvDocument::create(std::move(preamble), std::move(header), std::move(records));
}

std::string write_ccsv(const CcsvDocument& doc) {
  std::string out = rdf::serialize_turtle(doc.preamble());
  out += kSeparatorLine;
  out += '\n';
  csv::write_row(out, doc.header());
  for (const auto& row : doc.rows()) csv::write_row(out, row);
  return out;
}

const CcsvDocument* CcsvBundle::find(std::string_view name) const {
  for (const auto& d : documents) {
    if (d.name() == name) return &d;
  }
  return nullptr;
}

const CcsvDocument* CcsvBundle::find_by_dataset(std::string_view dataset_iri) const {
  for (const auto& d : documents) {
    if (d.dataset_iri() == dataset_iri) return &d;
  }
  return nullptr;
}

const CcsvDocument* CcsvBundle::find_by_class(std::string_view records_class) const {
  for (const auto& d : documents) {
    if (d.records_class() == records_class) return &d;
  }
  return nullptr;
}

namespace {

void check_provenance(const rdf::Graph& g) {
  auto typed = [&](std::string_view ns_, std::string_view local) {
    auto subjects = g.subjects(rdf::rdf_type(), rdf::iri(ns_, local));
    return std::set<Term>(subjects.begin(), subjects.end());
  };
  auto studies = typed(ns::kHasco, "Study");
  auto deployments = typed(ns::kVstoi, "Deployment");
  auto acquisitions = typed(ns::kHasco, "DataAcquisition");
  auto manual = typed(ns::kHacito, "ManualDataAnnotation");
  acquisitions.insert(manual.begin(), manual.end());

  if (studies.empty()) throw ProvenanceShapeError("no hasco:Study instance in the shared metadata");
  if (deployments.empty()) {
    throw ProvenanceShapeError("no vstoi:Deployment instance in the shared metadata");
  }
  if (acquisitions.empty()) {
    throw ProvenanceShapeError(
        "no hasco:DataAcquisition (or hacito:ManualDataAnnotation) instance in the shared "
        "metadata");
  }
  const Term has_deployment = rdf::iri(ns::kHasco, "hasDeployment");
  const Term member_of = rdf::iri(ns::kHasco, "isMemberOf");
  for (const Term& a : acquisitions) {
    bool deployed = false, in_study = false;
    for (const Term& d : g.objects(a, has_deployment)) deployed |= deployments.contains(d);
    for (const Term& s : g.objects(a, member_of)) in_study |= studies.contains(s);
    if (deployed && in_study) return;
  }
  throw ProvenanceShapeError(
      "no acquisition is linked to a vstoi:Deployment (hasco:hasDeployment) and a hasco:Study "
      "(hasco:isMemberOf)");
}

}  // namespace

CcsvBundle validate_bundle(std::vector<CcsvDocument> documents, rdf::Graph shared_metadata) {
  std::sort(documents.begin(), documents.end(), [](const auto& a, const auto& b) {
    return a.records_class() < b.records_class();
  });
  std::set<std::string> names;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (i > 0 && documents[i].records_class() == documents[i - 1].records_class()) {
      throw DuplicateDocumentError("two documents hold records of " + documents[i].records_class());
    }
    if (!names.insert(documents[i].name()).second) {
      throw DuplicateDocumentError("two documents are named " + documents[i].name());
    }
  }

  std::map<Iri, std::set<std::string>> identifiers;
  for (const auto& d : documents) {
    auto pos = d.identifier().index - 1;
    auto& ids = identifiers[d.records_class()];
    for (const auto& row : d.rows()) ids.insert(row[pos]);
  }

  std::vector<DanglingReference> dangling;
  for (const auto& d : documents) {
    for (const auto& b : d.bindings()) {
      const auto* ref = std::get_if<ReferenceRole>(&b.role);
      if (ref == nullptr) continue;
      auto target = identifiers.find(ref->target_class);
      if (target == identifiers.end()) continue;
      for (std::size_t r = 0; r < d.rows().size(); ++r) {
        const std::string& cell = d.rows()[r][b.index - 1];
        std::vector<std::string> ids =
            b.value_separator ? split_values(cell, *b.value_separator)
                              : (cell.empty() ? std::vector<std::string>{}
                                              : std::vector<std::string>{cell});
        for (const auto& id : ids) {
          if (!id.empty() && !target->second.contains(id)) {
            dangling.push_back({d.name(), b.name, r + 1, id});
          }
        }
      }
    }
  }
  if (!dangling.empty()) throw DanglingReferenceError(std::move(dangling));

  check_provenance(shared_metadata);
  return CcsvBundle{std::move(documents), std::move(shared_metadata)};
}

rdf::Graph extract_provenance(const rdf::Graph& preamble) {
  static const std::vector<std::string_view> metadata_ns = {ns::kHasco, ns::kVstoi, ns::kHacito,
                                                           ns::kProv};
  const Term contains = ccsv("containsRecordsOf");
  std::set<Term> subjects;
  for (const auto& t : preamble) {
    if (t.predicate != rdf::rdf_type() || !t.object.is_iri()) continue;
    bool metadata = std::any_of(metadata_ns.begin(), metadata_ns.end(), [&](std::string_view n) {
      return t.object.value().starts_with(n);
    });
    if (metadata && preamble.objects(t.subject, contains).empty()) subjects.insert(t.subject);
  }
  rdf::Graph out;
  for (const auto& [label, ns_] : preamble.prefixes()) out.set_prefix(label, ns_);
  for (const Term& s : subjects) {
    for (const auto& t : preamble.about(s)) out.insert(t);
  }
  return out;
}

}  // namespace forge::ccsv
