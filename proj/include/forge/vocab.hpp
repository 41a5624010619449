#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forge/rdf.hpp"

namespace forge::vocab {

using Iri = std::string;

// Built-in ontologies merged with any extras, plus the class hierarchy
// extracted from them. Immutable once loaded.
class VocabularyRegistry {
 public:
  const std::map<std::string, rdf::Graph>& ontologies() const noexcept {
    return ontologies_;
  }
  const rdf::Graph& merged() const noexcept { return merged_; }

  // (child, parent) pairs from rdfs:subClassOf.
  const std::set<std::pair<Iri, Iri>>& subclass_axioms() const noexcept {
    return axioms_;
  }
  const std::set<Iri>& classes() const noexcept { return classes_; }
  const std::set<Iri>& properties() const noexcept { return properties_; }
  const std::set<std::string>& domain_namespaces() const noexcept {
    return domain_namespaces_;
  }

  bool has_class(std::string_view iri) const {
    return classes_.contains(std::string(iri));
  }
  bool has_property(std::string_view iri) const {
    return properties_.contains(std::string(iri));
  }
  // Classes of a domain namespace (qoe-m by default) hold data rows; metadata
  // vocabularies never do.
  bool is_domain_class(std::string_view iri) const;

  const std::vector<Iri>& parents(const Iri& cls) const;

 private:
  friend VocabularyRegistry load_registry(std::span<const rdf::Graph>,
                                          std::span<const std::string>);

  std::map<std::string, rdf::Graph> ontologies_;
  rdf::Graph merged_;
  std::set<std::pair<Iri, Iri>> axioms_;
  std::map<Iri, std::vector<Iri>> parents_;
  std::set<Iri> classes_;
  std::set<Iri> properties_;
  std::set<std::string> domain_namespaces_;
};

// Merges the built-in vocabularies with `extra_ontologies`. Throws
// CyclicHierarchyError naming a class on a subclass cycle.
VocabularyRegistry load_registry(
    std::span<const rdf::Graph> extra_ontologies = {},
    std::span<const std::string> extra_domain_namespaces = {});

// Reflexive-transitive superclasses of `cls`. Throws UnknownClassError.
std::set<Iri> subclass_closure(const VocabularyRegistry& reg, std::string_view cls);

enum class AggregateFunction { kCount, kSum, kAvg, kMin, kMax };

std::string_view to_string(AggregateFunction f);
std::optional<AggregateFunction> function_from_string(std::string_view name);
Iri function_iri(AggregateFunction f);
std::optional<AggregateFunction> function_from_iri(std::string_view iri);

struct DimensionSpec {
  Iri node;
  Iri entity_class;

  bool operator==(const DimensionSpec&) const = default;
};

struct MeasureSpec {
  Iri node;
  Iri entity_class;
  AggregateFunction function = AggregateFunction::kCount;
  // Required for every function but count.
  std::optional<Iri> value_property;

  bool operator==(const MeasureSpec&) const = default;
};

// A QoE indicator. Specs are kept sorted by node IRI.
struct IndicatorDef {
  Iri iri;
  std::string label;
  std::vector<DimensionSpec> dimensions;
  std::vector<MeasureSpec> measures;

  bool operator==(const IndicatorDef&) const = default;
};

// One IndicatorDef per qoe:QoE_Indicator instance, ordered by IRI.
// Throws MalformedIndicatorError naming the missing or bad triple.
std::vector<IndicatorDef> load_indicator_catalog(const rdf::Graph& g,
                                                 const VocabularyRegistry& reg);

// Writes the definition triples of one indicator (type, label, definedBy,
// spec types, associated things, functions, value properties) into `out`.
void write_indicator(const IndicatorDef& def, rdf::Graph& out);

rdf::Graph sample_catalog_graph();

}  // namespace forge::vocab
