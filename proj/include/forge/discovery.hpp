#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"

namespace forge::discovery {

using Iri = std::string;

struct RecordsFact {
  Iri document;  // dataset IRI of the CCSV document
  Iri entity_class;
  auto operator<=>(const RecordsFact&) const = default;
};

// Ground facts for the suitability rules: indicator structure from the
// catalog, record classes from the bundle annotations, and the subclass
// axioms of the registry.
struct FactBase {
  std::string bundle_id;
  std::vector<vocab::IndicatorDef> indicators;  // catalog order
  std::set<std::pair<Iri, Iri>> defined_by;        // (indicator, spec node)
  std::set<std::pair<Iri, Iri>> associated_thing;  // (spec node, entity class)
  std::set<RecordsFact> contains_records_of;
  std::set<std::pair<Iri, Iri>> subclass;  // (child, parent)
};

struct Coverage {
  Iri entity_class;  // records class providing the spec
  Iri document;      // dataset IRI of the providing document
  bool operator==(const Coverage&) const = default;
};

// suitable holds iff every dimension and measure spec is covered.
struct SuitabilityResult {
  vocab::IndicatorDef indicator;
  std::map<Iri, Coverage> covered;  // spec node -> coverage
  bool suitable = false;
};

FactBase extract_facts(const ccsv::CcsvBundle& bundle,
                       const std::vector<vocab::IndicatorDef>& catalog,
                       const vocab::VocabularyRegistry& reg,
                       std::string bundle_id = "bundle");

// Forward-chains the rules
//   sub*(C, C).
//   sub*(C, E) :- subclass(C, D), sub*(D, E).
//   covers(S, Doc, C) :- associated_thing(S, E), contains_records_of(Doc, C), sub*(C, E).
//   suitable(I) :- for every defined_by(I, S): covers(S, _, _).
// to a fixpoint. Results follow catalog order; when several documents cover a
// spec the smallest (document, class) pair is reported.
std::vector<SuitabilityResult> discover(const FactBase& facts);

// Turtle export of the suitable indicators in catalog form, with coverage
// annotations (qoe:coveredBy document, qoe:coveringClass class) on each
// spec. Reloadable by load_indicator_catalog.
rdf::Graph export_discovered(const std::vector<SuitabilityResult>& results);

}  // namespace forge::discovery
