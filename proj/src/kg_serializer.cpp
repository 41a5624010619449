#include "forge/kg_serializer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "forge/error.hpp"
#include "forge/ingest.hpp"
#include "forge/io.hpp"
#include "forge/namespaces.hpp"
#include "forge/turtle.hpp"

namespace forge::kg {

namespace {

using rdf::Term;

bool is_metadata_class(const std::string& cls) {
  for (std::string_view n : {ns::kHasco, ns::kVstoi, ns::kHacito, ns::kProv}) {
    if (cls.starts_with(n)) return true;
  }
  return false;
}

struct Instance {
  Term node;
  std::string id;
};

// Everything observed for one predicate over the instances of a class.
struct PredicateColumn {
  Iri predicate;
  bool reference = false;
  std::optional<Iri> datatype;
  std::optional<std::string> language;
  Iri target_class;
  bool multi = false;
  std::map<Term, std::vector<std::string>> cells;  // instance -> values
};

std::string identifier_of(const rdf::Graph& kg, const Term& node) {
  static const Term dc_id = rdf::iri(ns::kDcterms, "identifier");
  std::vector<Term> ids;
  for (auto& o : kg.objects(node, dc_id)) {
    if (o.is_literal()) ids.push_back(o);
  }
  if (ids.size() > 1) {
    throw UnidentifiableObjectError(node.to_string() + " has more than one identifier");
  }
  if (ids.size() == 1) return ids.front().value();
  if (node.is_iri()) {
    if (auto parsed = ingest::parse_instance(node.value())) return parsed->second;
  }
  throw UnidentifiableObjectError(node.to_string() + " has no identifier");
}

// Target class and identifier of a referenced object. Minted instance IRIs
// are decoded directly so re-ingestion reproduces the same IRI.
std::pair<Iri, std::string> resolve_reference(const rdf::Graph& kg,
                                              const vocab::VocabularyRegistry& reg,
                                              const Term& object) {
  if (!object.is_iri()) {
    throw UnidentifiableObjectError("blank node " + object.to_string() +
                                    " cannot be serialized as a reference");
  }
  if (auto parsed = ingest::parse_instance(object.value())) return *parsed;
  for (const auto& t : kg.objects(object, rdf::rdf_type())) {
    if (t.is_iri() && reg.is_domain_class(t.value())) {
      return {t.value(), identifier_of(kg, object)};
    }
  }
  throw UnidentifiableObjectError(object.to_string() +
                                  " is neither a minted instance nor a typed domain instance");
}

void add_column_value(PredicateColumn& col, const Term& inst, const Term& object,
                      const rdf::Graph& kg, const vocab::VocabularyRegistry& reg) {
  const bool is_ref = !object.is_literal();
  auto mixed = [&](const std::string& what) {
    throw MixedObjectTypesError("predicate " + col.predicate + " has " + what);
  };
  auto& values = col.cells[inst];
  if (col.cells.size() == 1 && values.empty()) {
    col.reference = is_ref;
    if (is_ref) {
      col.target_class = resolve_reference(kg, reg, object).first;
    } else {
      if (!object.datatype().empty()) col.datatype = object.datatype();
      if (!object.language().empty()) col.language = object.language();
    }
  }
  if (col.reference != is_ref) mixed("both literal and IRI objects");
  if (is_ref) {
    auto [cls, id] = resolve_reference(kg, reg, object);
    if (cls != col.target_class) {
      mixed("objects of classes " + col.target_class + " and " + cls);
    }
    values.push_back(std::move(id));
  } else {
    if (object.datatype() != col.datatype.value_or("")) mixed("literals of differing datatypes");
    if (object.language() != col.language.value_or("")) mixed("literals of differing languages");
    values.push_back(object.value());
  }
  if (values.size() > 1) col.multi = true;
}

// Provenance reachable from the acquisitions: metadata-typed nodes and every
// triple about them.
rdf::Graph provenance_closure(const rdf::Graph& kg, const std::set<Term>& roots) {
  rdf::Graph out;
  std::set<Term> seen;
  std::deque<Term> queue(roots.begin(), roots.end());
  while (!queue.empty()) {
    Term node = queue.front();
    queue.pop_front();
    if (!seen.insert(node).second) continue;
    bool metadata = false;
    for (const auto& t : kg.objects(node, rdf::rdf_type())) {
      if (t.is_iri() && is_metadata_class(t.value())) metadata = true;
    }
    if (!metadata) continue;
    for (const auto& t : kg.about(node)) {
      out.insert(t);
      if (!t.object.is_literal()) queue.push_back(t.object);
    }
  }
  return out;
}

std::vector<ccsv::ColumnBinding> source_layout(const rdf::Graph& kg, const Iri& records_class) {
  const Iri node = ingest::dataset_node(records_class);
  if (kg.about(Term::iri(node)).empty()) return {};
  try {
    return ccsv::read_column_bindings(kg, node);
  } catch (const Error&) {
    return {};
  }
}

std::optional<Iri> bound_property(const ccsv::ColumnBinding& b) {
  if (const auto* a = std::get_if<ccsv::AttributeRole>(&b.role)) return a->property;
  if (const auto* r = std::get_if<ccsv::ReferenceRole>(&b.role)) return r->property;
  return std::nullopt;
}

ccsv::CcsvDocument build_document(const rdf::Graph& kg, const vocab::VocabularyRegistry& reg,
                                  const Iri& cls, std::vector<Instance> instances,
                                  rdf::Graph& shared) {
  static const Term dc_id = rdf::iri(ns::kDcterms, "identifier");
  static const Term generated_by = rdf::iri(ns::kProv, "wasGeneratedBy");

  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < instances.size(); ++i) {
    if (instances[i].id == instances[i - 1].id) {
      throw DuplicateIdentifierError("two instances of " + cls + " share identifier '" +
                                     instances[i].id + "'");
    }
  }

  std::map<Iri, PredicateColumn> columns;
  std::set<Term> acquisitions;
  for (const auto& inst : instances) {
    for (const auto& t : kg.about(inst.node)) {
      if (t.predicate == rdf::rdf_type() || t.predicate == dc_id) continue;
      if (t.predicate == generated_by) {
        acquisitions.insert(t.object);
        continue;
      }
      auto [it, fresh] = columns.try_emplace(t.predicate.value());
      if (fresh) it->second.predicate = t.predicate.value();
      add_column_value(it->second, inst.node, t.object, kg, reg);
    }
  }

  // Order: recorded source columns by their original index, then the rest by
  // (name, predicate).
  struct Planned {
    std::string name;
    const PredicateColumn* col;  // nullptr for the identifier
    std::optional<std::string> separator;
  };
  std::vector<Planned> plan;
  std::set<Iri> placed;
  bool id_placed = false;
  for (const auto& b : source_layout(kg, cls)) {
    if (b.is_identifier()) {
      if (!id_placed) plan.push_back({b.name, nullptr, std::nullopt});
      id_placed = true;
      continue;
    }
    auto prop = bound_property(b);
    if (!prop || placed.contains(*prop)) continue;
    auto it = columns.find(*prop);
    if (it == columns.end() || it->second.reference != b.is_reference()) continue;
    placed.insert(*prop);
    plan.push_back({b.name, &it->second, b.value_separator});
  }
  if (!id_placed) plan.insert(plan.begin(), {"id", nullptr, std::nullopt});
  std::vector<Planned> rest;
  for (const auto& [pred, col] : columns) {
    if (!placed.contains(pred)) rest.push_back({ns::local_name(pred), &col, std::nullopt});
  }
  std::sort(rest.begin(), rest.end(), [](const Planned& a, const Planned& b) {
    return std::tie(a.name, a.col->predicate) < std::tie(b.name, b.col->predicate);
  });
  plan.insert(plan.end(), rest.begin(), rest.end());

  std::set<std::string> names;
  for (auto& p : plan) {
    std::string base = p.name.empty() ? "column" : p.name;
    std::string name = base;
    for (int n = 2; !names.insert(name).second; ++n) name = base + "_" + std::to_string(n);
    p.name = name;
    if (p.col && p.col->multi && !p.separator) p.separator = std::string(ccsv::kDefaultValueSeparator);
  }

  ccsv::DocumentParts parts;
  parts.dataset_iri = document_iri(cls);
  parts.records_class = cls;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& p = plan[i];
    ccsv::ColumnBinding b;
    b.index = i + 1;
    b.name = p.name;
    b.value_separator = p.separator;
    if (!p.col) {
      b.role = ccsv::IdentifierRole{cls};
    } else if (p.col->reference) {
      b.role = ccsv::ReferenceRole{p.col->target_class, p.col->predicate};
    } else {
      b.role = ccsv::AttributeRole{p.col->predicate};
      b.datatype = p.col->datatype;
      b.language = p.col->language;
    }
    parts.bindings.push_back(std::move(b));
    parts.header.push_back(p.name);
  }
  for (const auto& inst : instances) {
    csv::Row row;
    for (const auto& p : plan) {
      if (!p.col) {
        row.push_back(inst.id);
        continue;
      }
      auto it = p.col->cells.find(inst.node);
      if (it == p.col->cells.end()) {
        row.emplace_back();
        continue;
      }
      auto values = it->second;
      std::sort(values.begin(), values.end());
      row.push_back(p.separator ? ccsv::join_values(values, *p.separator) : values.front());
    }
    parts.rows.push_back(std::move(row));
  }

  for (const auto& [label, ns_] : ns::standard_prefixes()) parts.metadata.set_prefix(label, ns_);
  const Term doc = Term::iri(parts.dataset_iri);
  parts.metadata.add(doc, rdf::rdf_type(), rdf::iri(ns::kProv, "Entity"));
  for (const auto& a : acquisitions) parts.metadata.add(doc, generated_by, a);
  rdf::Graph prov = provenance_closure(kg, acquisitions);
  for (const auto& t : prov) {
    parts.metadata.insert(t);
    shared.insert(t);
  }
  return ccsv::CcsvDocument::build(std::move(parts));
}

}  // namespace

Iri document_iri(std::string_view records_class) {
  return ns::iri(ns::kKg, "ccsv/" + ns::local_name(records_class));
}

ccsv::CcsvBundle serialize_kg(const rdf::Graph& kg, const vocab::VocabularyRegistry& reg) {
  // Step 1: instantiated domain classes.
  std::map<Term, Iri> type_of;
  for (const auto& t : kg) {
    if (t.predicate != rdf::rdf_type() || !t.object.is_iri()) continue;
    const Iri& cls = t.object.value();
    if (!reg.is_domain_class(cls)) continue;
    auto [it, fresh] = type_of.emplace(t.subject, cls);
    if (!fresh && it->second != cls) {
      throw MixedObjectTypesError(t.subject.to_string() + " is typed with both " + it->second +
                                  " and " + cls);
    }
  }
  if (type_of.empty()) throw EmptyKgError("the graph holds no instances of domain classes");

  std::map<Iri, std::vector<Instance>> by_class;
  for (const auto& [node, cls] : type_of) {
    by_class[cls].push_back({node, identifier_of(kg, node)});
  }

  // Steps 2-4: rows, bindings and provenance annotations.
  rdf::Graph shared;
  for (const auto& [label, ns_] : ns::standard_prefixes()) shared.set_prefix(label, ns_);
  std::vector<ccsv::CcsvDocument> docs;
  for (auto& [cls, instances] : by_class) {
    docs.push_back(build_document(kg, reg, cls, std::move(instances), shared));
  }
  return ccsv::validate_bundle(std::move(docs), std::move(shared));
}

SerializationResult serialize_and_discover(const rdf::Graph& kg,
                                           const vocab::VocabularyRegistry& reg,
                                           const std::vector<vocab::IndicatorDef>& catalog) {
  SerializationResult out{serialize_kg(kg, reg), {}, {}};
  // Step 5 runs only on a validated bundle.
  auto facts = discovery::extract_facts(out.bundle, catalog, reg);
  out.results = discovery::discover(facts);
  out.discovered = discovery::export_discovered(out.results);
  return out;
}

std::vector<std::string> write_output(const std::filesystem::path& dir,
                                      const ccsv::CcsvBundle& bundle,
                                      const rdf::Graph& discovered) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  // Stale documents from an earlier run would be picked up by load_bundle.
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ccsv") fs::remove(entry.path());
  }
  std::vector<std::string> files;
  for (const auto& doc : bundle.documents) {
    std::string file = doc.name() + ".ccsv";
    io::write_file(dir / file, ccsv::write_ccsv(doc));
    files.push_back(std::move(file));
  }
  io::write_file(dir / kDiscoveredFile, rdf::serialize_turtle(discovered));
  files.emplace_back(kDiscoveredFile);
  return files;
}

ccsv::CcsvBundle load_bundle(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw NotFoundError("no bundle directory at " + dir.string());
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ccsv") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<ccsv::CcsvDocument> docs;
  rdf::Graph shared;
  for (const auto& [label, ns_] : ns::standard_prefixes()) shared.set_prefix(label, ns_);
  for (const auto& p : paths) {
    docs.push_back(ccsv::read_ccsv(io::read_file(p)));
    for (const auto& t : ccsv::extract_provenance(docs.back().preamble())) shared.insert(t);
  }
  return ccsv::validate_bundle(std::move(docs), std::move(shared));
}

}  // namespace forge::kg
