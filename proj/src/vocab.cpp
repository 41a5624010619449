#include "forge/vocab.hpp"

#include <algorithm>
#include <deque>

#include "forge/builtin_data.hpp"
#include "forge/error.hpp"
#include "forge/namespaces.hpp"
#include "forge/turtle.hpp"

namespace forge::vocab {

namespace {

using rdf::Term;

const std::vector<std::pair<std::string, const char*>>& builtin_sources() {
  static const std::vector<std::pair<std::string, const char*>> sources = {
      {"vstoi", data::kVstoiTtl}, {"hasco", data::kHascoTtl},
      {"hacito", data::kHacitoTtl}, {"prov", data::kProvTtl},
      {"qoe", data::kQoeTtl},     {"qoe-m", data::kQoeMTtl},
      {"ccsv", data::kCcsvTtl},
  };
  return sources;
}

const std::map<std::string, rdf::Graph>& builtin_graphs() {
  static const std::map<std::string, rdf::Graph> graphs = [] {
    std::map<std::string, rdf::Graph> out;
    for (const auto& [name, text] : builtin_sources()) {
      out.emplace(name, rdf::parse_turtle(text));
    }
    return out;
  }();
  return graphs;
}

// Returns one class on a cycle, if any.
std::optional<Iri> find_cycle(const std::map<Iri, std::vector<Iri>>& parents) {
  enum class Mark { kNone, kActive, kDone };
  std::map<Iri, Mark> mark;
  for (const auto& [start, unused] : parents) {
    if (mark[start] != Mark::kNone) continue;
    // Iterative DFS; the stack holds (node, next parent index).
    std::vector<std::pair<Iri, std::size_t>> stack{{start, 0}};
    mark[start] = Mark::kActive;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      auto it = parents.find(node);
      if (it == parents.end() || next >= it->second.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const Iri& parent = it->second[next++];
      Mark& m = mark[parent];
      if (m == Mark::kActive) return parent;
      if (m == Mark::kNone) {
        m = Mark::kActive;
        stack.emplace_back(parent, 0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool VocabularyRegistry::is_domain_class(std::string_view iri) const {
  return std::any_of(domain_namespaces_.begin(), domain_namespaces_.end(),
                     [&](const std::string& ns) {
                       return iri.size() > ns.size() && iri.starts_with(ns);
                     });
}

const std::vector<Iri>& VocabularyRegistry::parents(const Iri& cls) const {
  static const std::vector<Iri> none;
  auto it = parents_.find(cls);
  return it == parents_.end() ? none : it->second;
}

VocabularyRegistry load_registry(std::span<const rdf::Graph> extra_ontologies,
                                 std::span<const std::string> extra_domain_namespaces) {
  VocabularyRegistry reg;
  reg.ontologies_ = builtin_graphs();
  std::size_t n = 0;
  for (const auto& g : extra_ontologies) {
    reg.ontologies_.emplace("extra-" + std::to_string(++n), g);
  }
  for (const auto& [name, g] : reg.ontologies_) {
    reg.merged_ = rdf::merge(reg.merged_, g);
  }

  const Term sub_class_of = rdf::iri(ns::kRdfs, "subClassOf");
  const std::set<Term> class_types = {rdf::iri(ns::kOwl, "Class"),
                                      rdf::iri(ns::kRdfs, "Class")};
  const std::set<Term> property_types = {
      rdf::iri(ns::kRdf, "Property"), rdf::iri(ns::kOwl, "ObjectProperty"),
      rdf::iri(ns::kOwl, "DatatypeProperty"),
      rdf::iri(ns::kOwl, "AnnotationProperty")};

  for (const auto& t : reg.merged_) {
    if (t.predicate == sub_class_of && t.subject.is_iri() && t.object.is_iri()) {
      reg.axioms_.emplace(t.subject.value(), t.object.value());
      reg.classes_.insert(t.subject.value());
      reg.classes_.insert(t.object.value());
    } else if (t.predicate == rdf::rdf_type() && t.subject.is_iri()) {
      if (class_types.contains(t.object)) reg.classes_.insert(t.subject.value());
      if (property_types.contains(t.object)) {
        reg.properties_.insert(t.subject.value());
      }
    }
  }
  for (const auto& [child, parent] : reg.axioms_) {
    reg.parents_[child].push_back(parent);
  }
  if (auto member = find_cycle(reg.parents_)) {
    throw CyclicHierarchyError("subclass cycle through " + *member);
  }

  reg.domain_namespaces_.insert(std::string(ns::kQoeM));
  for (const auto& d : extra_domain_namespaces) reg.domain_namespaces_.insert(d);
  return reg;
}

std::set<Iri> subclass_closure(const VocabularyRegistry& reg, std::string_view cls) {
  Iri start(cls);
  if (!reg.has_class(start)) throw UnknownClassError("unknown class " + start);
  std::set<Iri> seen{start};
  std::deque<Iri> queue{start};
  while (!queue.empty()) {
    Iri c = std::move(queue.front());
    queue.pop_front();
    for (const auto& p : reg.parents(c)) {
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return seen;
}

std::string_view to_string(AggregateFunction f) {
  switch (f) {
    case AggregateFunction::kCount: return "count";
    case AggregateFunction::kSum: return "sum";
    case AggregateFunction::kAvg: return "avg";
    case AggregateFunction::kMin: return "min";
    case AggregateFunction::kMax: return "max";
  }
  return "count";
}

std::optional<AggregateFunction> function_from_string(std::string_view name) {
  for (auto f : {AggregateFunction::kCount, AggregateFunction::kSum,
                 AggregateFunction::kAvg, AggregateFunction::kMin,
                 AggregateFunction::kMax}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

Iri function_iri(AggregateFunction f) {
  switch (f) {
    case AggregateFunction::kCount: return ns::iri(ns::kQoe, "Count");
    case AggregateFunction::kSum: return ns::iri(ns::kQoe, "Sum");
    case AggregateFunction::kAvg: return ns::iri(ns::kQoe, "Average");
    case AggregateFunction::kMin: return ns::iri(ns::kQoe, "Minimum");
    case AggregateFunction::kMax: return ns::iri(ns::kQoe, "Maximum");
  }
  return {};
}

std::optional<AggregateFunction> function_from_iri(std::string_view iri) {
  for (auto f : {AggregateFunction::kCount, AggregateFunction::kSum,
                 AggregateFunction::kAvg, AggregateFunction::kMin,
                 AggregateFunction::kMax}) {
    if (function_iri(f) == iri) return f;
  }
  return std::nullopt;
}

namespace {

std::string node_id(const Term& t) {
  return t.is_blank() ? "_:" + t.value() : t.value();
}

Term node_term(const Iri& id) {
  if (id.starts_with("_:")) return Term::blank(id.substr(2));
  return Term::iri(id);
}

[[noreturn]] void malformed(const Term& subject, std::string_view what) {
  throw MalformedIndicatorError(subject.to_string() + ": " + std::string(what));
}

Term single_iri(const rdf::Graph& g, const Term& s, const Term& p,
                std::string_view what) {
  auto objs = g.objects(s, p);
  if (objs.empty()) malformed(s, "missing " + std::string(what));
  if (objs.size() > 1) malformed(s, "more than one " + std::string(what));
  if (!objs.front().is_iri()) malformed(s, std::string(what) + " is not an IRI");
  return objs.front();
}

}  // namespace

std::vector<IndicatorDef> load_indicator_catalog(const rdf::Graph& g,
                                                 const VocabularyRegistry& reg) {
  const Term indicator_class = rdf::iri(ns::kQoe, "QoE_Indicator");
  const Term dimension_class = rdf::iri(ns::kQoe, "Dimension");
  const Term measure_class = rdf::iri(ns::kQoe, "Measure");
  const Term defined_by = rdf::iri(ns::kQoe, "definedBy");
  const Term associated = rdf::iri(ns::kQoe, "hasAssociatedThing");
  const Term has_function = rdf::iri(ns::kQoe, "hasFunction");
  const Term on_property = rdf::iri(ns::kQoe, "onProperty");
  const Term label = rdf::iri(ns::kRdfs, "label");

  std::vector<IndicatorDef> out;
  for (const Term& ind : g.subjects(rdf::rdf_type(), indicator_class)) {
    if (!ind.is_iri()) malformed(ind, "indicator must be an IRI");
    IndicatorDef def;
    def.iri = ind.value();

    auto labels = g.objects(ind, label);
    if (labels.empty() || !labels.front().is_literal()) {
      malformed(ind, "missing triple (indicator rdfs:label \"...\")");
    }
    def.label = labels.front().value();

    for (const Term& spec : g.objects(ind, defined_by)) {
      if (spec.is_literal()) malformed(ind, "qoe:definedBy object is a literal");
      bool is_dim = g.has_type(spec, dimension_class);
      bool is_measure = g.has_type(spec, measure_class);
      if (is_dim == is_measure) {
        malformed(spec, "spec must be typed as exactly one of qoe:Dimension, "
                        "qoe:Measure");
      }
      Term thing = single_iri(g, spec, associated,
                              "triple (spec qoe:hasAssociatedThing ?class)");
      if (!reg.has_class(thing.value())) {
        malformed(spec, "associated thing " + thing.value() + " is not a known class");
      }
      if (is_dim) {
        def.dimensions.push_back({node_id(spec), thing.value()});
        continue;
      }
      MeasureSpec m{node_id(spec), thing.value(), AggregateFunction::kCount, {}};
      Term fn = single_iri(g, spec, has_function,
                           "triple (measure qoe:hasFunction ?function)");
      auto parsed = function_from_iri(fn.value());
      if (!parsed) malformed(spec, "unknown function " + fn.value());
      m.function = *parsed;
      auto props = g.objects(spec, on_property);
      if (props.size() > 1) malformed(spec, "more than one qoe:onProperty");
      if (!props.empty()) {
        if (!props.front().is_iri()) malformed(spec, "qoe:onProperty is not an IRI");
        m.value_property = props.front().value();
      }
      if (m.function != AggregateFunction::kCount && !m.value_property) {
        malformed(spec, "missing triple (measure qoe:onProperty ?property) for " +
                            std::string(to_string(m.function)));
      }
      def.measures.push_back(std::move(m));
    }
    if (def.measures.empty()) {
      malformed(ind, "missing triple (indicator qoe:definedBy ?measure)");
    }
    std::sort(def.dimensions.begin(), def.dimensions.end(),
              [](const auto& a, const auto& b) { return a.node < b.node; });
    std::sort(def.measures.begin(), def.measures.end(),
              [](const auto& a, const auto& b) { return a.node < b.node; });
    out.push_back(std::move(def));
  }
  return out;
}

void write_indicator(const IndicatorDef& def, rdf::Graph& out) {
  for (const char* p : {"rdf", "rdfs", "qoe", "qoe-m"}) {
    out.set_prefix(p, ns::standard_prefixes().at(p));
  }
  const Term ind = Term::iri(def.iri);
  const Term defined_by = rdf::iri(ns::kQoe, "definedBy");
  const Term associated = rdf::iri(ns::kQoe, "hasAssociatedThing");
  out.add(ind, rdf::rdf_type(), rdf::iri(ns::kQoe, "QoE_Indicator"));
  out.add(ind, rdf::iri(ns::kRdfs, "label"), rdf::str(def.label));
  for (const auto& d : def.dimensions) {
    Term node = node_term(d.node);
    out.add(ind, defined_by, node);
    out.add(node, rdf::rdf_type(), rdf::iri(ns::kQoe, "Dimension"));
    out.add(node, associated, Term::iri(d.entity_class));
  }
  for (const auto& m : def.measures) {
    Term node = node_term(m.node);
    out.add(ind, defined_by, node);
    out.add(node, rdf::rdf_type(), rdf::iri(ns::kQoe, "Measure"));
    out.add(node, associated, Term::iri(m.entity_class));
    out.add(node, rdf::iri(ns::kQoe, "hasFunction"), Term::iri(function_iri(m.function)));
    if (m.value_property) {
      out.add(node, rdf::iri(ns::kQoe, "onProperty"), Term::iri(*m.value_property));
    }
  }
}

rdf::Graph sample_catalog_graph() { return rdf::parse_turtle(data::kSampleCatalogTtl); }

}  // namespace forge::vocab
