#include "forge/ingest.hpp"

#include <chrono>
#include <map>
#include <regex>
#include <set>

#include "forge/csv.hpp"
#include "forge/error.hpp"
#include "forge/namespaces.hpp"

namespace forge::ingest {

namespace {

using rdf::Term;

std::optional<std::chrono::sys_time<std::chrono::milliseconds>> parse_instant(
    const std::string& text) {
  static const std::regex pattern(
      R"(^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(\.(\d{1,3}))?Z$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  using namespace std::chrono;
  year_month_day date{year{std::stoi(m[1])}, month{unsigned(std::stoi(m[2]))},
                      day{unsigned(std::stoi(m[3]))}};
  int h = std::stoi(m[4]), mi = std::stoi(m[5]), s = std::stoi(m[6]);
  if (!date.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
  int ms = 0;
  if (m[8].matched) {
    std::string frac = m[8].str();
    frac.resize(3, '0');
    ms = std::stoi(frac);
  }
  return sys_days(date) + hours(h) + minutes(mi) + seconds(s) + milliseconds(ms);
}

bool valid_iri(const std::string& iri) {
  try {
    Term::iri(iri);
    return true;
  } catch (const InvalidTermError&) {
    return false;
  }
}

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    out += keep ? c : '-';
  }
  return out.empty() ? "unnamed" : out;
}

std::string percent_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == '~') {
      out += c;
    } else {
      out += '%';
      out += hex[u >> 4];
      out += hex[u & 0xF];
    }
  }
  return out;
}

std::optional<std::string> percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
        !std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      return std::nullopt;
    }
    out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
    i += 2;
  }
  return out;
}

Term kg_node(std::string_view path) { return Term::iri(ns::iri(ns::kKg, path)); }

}  // namespace

std::string_view to_string(AcquisitionKind kind) {
  return kind == AcquisitionKind::kNative ? "native" : "manual_annotation";
}

std::optional<AcquisitionKind> acquisition_kind_from_string(std::string_view s) {
  if (s == "native") return AcquisitionKind::kNative;
  if (s == "manual_annotation") return AcquisitionKind::kManualAnnotation;
  return std::nullopt;
}

DatasetCharacterization characterize(const CharacterizationAnswers& answers) {
  auto missing = [](std::string_view aspect) {
    throw IncompleteCharacterizationError("missing characterization aspect: " +
                                          std::string(aspect));
  };
  if (!answers.data_source) missing("data_source");
  if (!answers.acquisition_kind) missing("acquisition_kind");
  if (!answers.study) missing("study");
  if (!answers.time_frame) missing("time_frame");

  const auto& src = *answers.data_source;
  if (src.platform_iri.empty()) missing("data_source.platform_iri");
  if (src.platform_label.empty()) missing("data_source.platform_label");
  if (src.annotator_label.empty()) missing("data_source.annotator_label");
  if (answers.study->iri.empty()) missing("study.iri");
  if (answers.study->label.empty()) missing("study.label");
  if (answers.time_frame->start.empty()) missing("time_frame.start");
  if (answers.time_frame->end.empty()) missing("time_frame.end");

  if (!valid_iri(src.platform_iri)) {
    throw InvalidCharacterizationError("data_source.platform_iri is not an IRI: " +
                                       src.platform_iri);
  }
  if (!valid_iri(answers.study->iri)) {
    throw InvalidCharacterizationError("study.iri is not an IRI: " + answers.study->iri);
  }
  auto start = parse_instant(answers.time_frame->start);
  auto end = parse_instant(answers.time_frame->end);
  if (!start) {
    throw InvalidCharacterizationError("time_frame.start is not an ISO-8601 UTC instant: " +
                                       answers.time_frame->start);
  }
  if (!end) {
    throw InvalidCharacterizationError("time_frame.end is not an ISO-8601 UTC instant: " +
                                       answers.time_frame->end);
  }
  if (*start > *end) {
    throw InvalidCharacterizationError("time_frame.start is after time_frame.end");
  }
  return DatasetCharacterization{src, *answers.acquisition_kind, *answers.study,
                                 *answers.time_frame};
}

Iri mint_instance(std::string_view entity_class, std::string_view id) {
  return ns::namespace_of(entity_class) + "inst/" + ns::local_name(entity_class) + "/" +
         percent_encode(id);
}

std::optional<std::pair<Iri, std::string>> parse_instance(std::string_view iri) {
  auto id_slash = iri.rfind('/');
  if (id_slash == std::string_view::npos) return std::nullopt;
  auto class_slash = iri.rfind('/', id_slash == 0 ? 0 : id_slash - 1);
  if (class_slash == std::string_view::npos || class_slash < 4) return std::nullopt;
  if (iri.substr(class_slash - 4, 5) != "inst/") return std::nullopt;
  std::string_view ns_part = iri.substr(0, class_slash - 4);
  std::string_view local = iri.substr(class_slash + 1, id_slash - class_slash - 1);
  if (local.empty()) return std::nullopt;
  auto id = percent_decode(iri.substr(id_slash + 1));
  if (!id || id->empty()) return std::nullopt;
  return std::make_pair(std::string(ns_part) + std::string(local), *id);
}

Iri dataset_node(std::string_view records_class) {
  return ns::iri(ns::kKg, "dataset/" + ns::local_name(records_class));
}

Iri acquisition_node(std::string_view records_class) {
  return ns::iri(ns::kKg, "acquisition/" + ns::local_name(records_class));
}

Iri deployment_node(const DataSource& source) {
  return ns::iri(ns::kKg, "deployment/" + slug(ns::local_name(source.platform_iri)) + "--" +
                              slug(source.annotator_label));
}

Iri instrument_node(const DataSource& source) {
  return ns::iri(ns::kKg, "instrument/" + slug(source.annotator_label));
}

namespace {

struct ResolvedColumn {
  std::size_t position;  // 0-based header position
  const ColumnMapping* mapping;
};

std::vector<ResolvedColumn> resolve_columns(const csv::Row& header, const IngestMapping& mapping,
                                            const vocab::VocabularyRegistry& reg) {
  if (!reg.has_class(mapping.records_class)) {
    throw UnknownClassError("records class " + mapping.records_class +
                            " is not declared in the ontologies");
  }
  if (!reg.is_domain_class(mapping.records_class)) {
    throw MappingError("records class " + mapping.records_class +
                       " is not in a domain ontology namespace");
  }

  std::vector<ResolvedColumn> out;
  std::vector<std::string> missing;
  std::set<std::string> mapped;
  std::size_t identifiers = 0;
  for (const auto& c : mapping.columns) {
    if (!mapped.insert(c.column).second) {
      throw MappingError("column '" + c.column + "' is mapped twice");
    }
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == c.column) {
        pos = i;
        break;
      }
    }
    if (!pos) {
      missing.push_back(c.column);
      continue;
    }
    std::visit(
        [&](const auto& role) {
          using T = std::decay_t<decltype(role)>;
          if constexpr (std::is_same_v<T, ccsv::IdentifierRole>) {
            ++identifiers;
            if (role.entity_class != mapping.records_class) {
              throw MappingError("identifier column '" + c.column + "' is bound to " +
                                 role.entity_class + ", records are " + mapping.records_class);
            }
          } else if constexpr (std::is_same_v<T, ccsv::AttributeRole>) {
            if (!reg.has_property(role.property)) {
              throw UnknownPropertyError("column '" + c.column + "': property " + role.property +
                                         " is not declared in the ontologies");
            }
          } else {
            if (!role.property) {
              throw MappingError("reference column '" + c.column + "' has no link property");
            }
            if (!reg.has_property(*role.property)) {
              throw UnknownPropertyError("column '" + c.column + "': property " +
                                         *role.property + " is not declared in the ontologies");
            }
            if (!reg.has_class(role.target_class)) {
              throw UnknownClassError("column '" + c.column + "': class " + role.target_class +
                                      " is not declared in the ontologies");
            }
          }
        },
        c.role);
    out.push_back({*pos, &c});
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    throw HeaderMismatchError("mapped columns absent from the CSV header: " + names);
  }
  if (identifiers != 1) {
    throw MappingError("mapping must declare exactly one identifier column, found " +
                       std::to_string(identifiers));
  }
  return out;
}

void add_scaffolding(const IngestMapping& mapping, const std::vector<ResolvedColumn>& columns,
                     const csv::Row& header, const DatasetCharacterization& ch, rdf::Graph& g) {
  const Term label = rdf::iri(ns::kRdfs, "label");
  const auto& src = ch.data_source;
  const bool manual = ch.acquisition_kind == AcquisitionKind::kManualAnnotation;

  const Term platform = Term::iri(src.platform_iri);
  g.add(platform, rdf::rdf_type(), rdf::iri(ns::kHacito, "InformationSystem"));
  g.add(platform, label, rdf::str(src.platform_label));

  const Term instrument = Term::iri(instrument_node(src));
  g.add(instrument, rdf::rdf_type(),
        manual ? rdf::iri(ns::kHacito, "AnnotatorSoftware") : rdf::iri(ns::kVstoi, "Instrument"));
  g.add(instrument, label, rdf::str(src.annotator_label));

  const Term deployment = Term::iri(deployment_node(src));
  if (g.objects(deployment, rdf::rdf_type()).empty()) {
    g.add(deployment, rdf::rdf_type(), rdf::iri(ns::kVstoi, "Deployment"));
    g.add(deployment, rdf::iri(ns::kVstoi, "hasPlatform"), platform);
    g.add(deployment, rdf::iri(ns::kVstoi, "hasInstrument"), instrument);
    g.add(deployment, rdf::iri(ns::kProv, "startedAtTime"),
          rdf::typed(ch.time_frame.start, "dateTime"));
  }

  const Term study = Term::iri(ch.study.iri);
  g.add(study, rdf::rdf_type(), rdf::iri(ns::kHasco, "Study"));
  g.add(study, label, rdf::str(ch.study.label));

  const Term acquisition = Term::iri(acquisition_node(mapping.records_class));
  g.add(acquisition, rdf::rdf_type(),
        manual ? rdf::iri(ns::kHacito, "ManualDataAnnotation")
               : rdf::iri(ns::kHasco, "DataAcquisition"));
  g.add(acquisition, rdf::iri(ns::kHasco, "hasDeployment"), deployment);
  g.add(acquisition, rdf::iri(ns::kHasco, "isMemberOf"), study);
  g.add(acquisition, rdf::iri(ns::kProv, "startedAtTime"),
        rdf::typed(ch.time_frame.start, "dateTime"));
  g.add(acquisition, rdf::iri(ns::kProv, "endedAtTime"),
        rdf::typed(ch.time_frame.end, "dateTime"));

  // The dataset node records the source layout; serialization reuses its
  // column names and order.
  const Iri dataset_iri = dataset_node(mapping.records_class);
  const Term dataset = Term::iri(dataset_iri);
  g.add(dataset, rdf::rdf_type(), rdf::iri(ns::kProv, "Entity"));
  g.add(dataset, rdf::iri(ns::kProv, "wasGeneratedBy"), acquisition);
  std::vector<ccsv::ColumnBinding> bindings;
  for (const auto& c : columns) {
    bindings.push_back({c.position + 1, header[c.position], c.mapping->role,
                        c.mapping->value_separator, c.mapping->datatype, c.mapping->language});
  }
  ccsv::write_binding_triples(dataset_iri, mapping.records_class, bindings, g);
}

std::vector<std::string> cell_values(const std::string& cell, const ColumnMapping& m) {
  if (m.value_separator) return ccsv::split_values(cell, *m.value_separator);
  if (cell.empty()) return {};
  return {cell};
}

}  // namespace

rdf::Graph load_dataset(std::string_view csv_text, const IngestMapping& mapping,
                        const DatasetCharacterization& ch, const rdf::Graph& kg,
                        const vocab::VocabularyRegistry& reg) {
  auto records = csv::parse(csv_text);
  csv::Row header;
  if (!records.empty()) {
    header = std::move(records.front());
    records.erase(records.begin());
  }
  auto columns = resolve_columns(header, mapping, reg);
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw RowWidthError(r + 1, header.size(), records[r].size());
    }
  }

  rdf::Graph g = kg;
  for (const auto& [label, ns_] : ns::standard_prefixes()) {
    if (!g.prefixes().contains(label)) g.set_prefix(label, ns_);
  }
  add_scaffolding(mapping, columns, header, ch, g);

  const Term cls = Term::iri(mapping.records_class);
  const Term identifier = rdf::iri(ns::kDcterms, "identifier");
  const Term generated_by = rdf::iri(ns::kProv, "wasGeneratedBy");
  const Term acquisition = Term::iri(acquisition_node(mapping.records_class));

  std::size_t id_pos = 0;
  for (const auto& c : columns) {
    if (std::holds_alternative<ccsv::IdentifierRole>(c.mapping->role)) id_pos = c.position;
  }

  std::map<std::string, std::size_t> seen_ids;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& row = records[r];
    const std::string& id = row[id_pos];
    if (id.empty()) throw MappingError("row " + std::to_string(r + 1) + " has an empty identifier");
    if (auto [it, fresh] = seen_ids.emplace(id, r + 1); !fresh) {
      throw DuplicateIdentifierError("identifier '" + id + "' appears in rows " +
                                     std::to_string(it->second) + " and " + std::to_string(r + 1));
    }
    const Term inst = Term::iri(mint_instance(mapping.records_class, id));
    g.add(inst, rdf::rdf_type(), cls);
    g.add(inst, identifier, rdf::str(id));
    g.add(inst, generated_by, acquisition);
    for (const auto& c : columns) {
      const ColumnMapping& m = *c.mapping;
      if (const auto* attr = std::get_if<ccsv::AttributeRole>(&m.role)) {
        const Term prop = Term::iri(attr->property);
        for (auto& v : cell_values(row[c.position], m)) {
          g.add(inst, prop,
                Term::literal(std::move(v), m.datatype.value_or(""), m.language.value_or("")));
        }
      } else if (const auto* ref = std::get_if<ccsv::ReferenceRole>(&m.role)) {
        const Term prop = Term::iri(*ref->property);
        for (const auto& v : cell_values(row[c.position], m)) {
          if (!v.empty()) g.add(inst, prop, Term::iri(mint_instance(ref->target_class, v)));
        }
      }
    }
  }
  return g;
}

IngestMapping mapping_from_document(const ccsv::CcsvDocument& doc) {
  IngestMapping mapping{doc.records_class(), {}};
  for (const auto& b : doc.bindings()) {
    if (const auto* ref = std::get_if<ccsv::ReferenceRole>(&b.role); ref && !ref->property) {
      throw MappingError("reference column '" + b.name + "' has no ccsv:linkProperty");
    }
    mapping.columns.push_back({b.name, b.role, b.value_separator, b.datatype, b.language});
  }
  return mapping;
}

}  // namespace forge::ingest
