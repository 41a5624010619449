#include "forge/discovery.hpp"

#include <algorithm>

#include "forge/namespaces.hpp"

namespace forge::discovery {

FactBase extract_facts(const ccsv::CcsvBundle& bundle,
                       const std::vector<vocab::IndicatorDef>& catalog,
                       const vocab::VocabularyRegistry& reg, std::string bundle_id) {
  FactBase facts;
  facts.bundle_id = std::move(bundle_id);
  facts.indicators = catalog;
  for (const auto& ind : catalog) {
    for (const auto& d : ind.dimensions) {
      facts.defined_by.emplace(ind.iri, d.node);
      facts.associated_thing.emplace(d.node, d.entity_class);
    }
    for (const auto& m : ind.measures) {
      facts.defined_by.emplace(ind.iri, m.node);
      facts.associated_thing.emplace(m.node, m.entity_class);
    }
  }
  for (const auto& doc : bundle.documents) {
    facts.contains_records_of.insert({doc.dataset_iri(), doc.records_class()});
  }
  facts.subclass = reg.subclass_axioms();
  return facts;
}

namespace {

// Semi-naive evaluation of sub*, seeded with the record classes only since no
// other class can appear in the first argument of a covers derivation.
std::set<std::pair<Iri, Iri>> ancestor_pairs(const FactBase& facts) {
  std::map<Iri, std::vector<Iri>> parents;
  for (const auto& [child, parent] : facts.subclass) parents[child].push_back(parent);

  std::set<std::pair<Iri, Iri>> known;
  std::vector<std::pair<Iri, Iri>> delta;
  for (const auto& r : facts.contains_records_of) {
    if (known.emplace(r.entity_class, r.entity_class).second) {
      delta.emplace_back(r.entity_class, r.entity_class);
    }
  }
  while (!delta.empty()) {
    std::vector<std::pair<Iri, Iri>> next;
    for (const auto& [c, d] : delta) {
      auto it = parents.find(d);
      if (it == parents.end()) continue;
      for (const auto& e : it->second) {
        if (known.emplace(c, e).second) next.emplace_back(c, e);
      }
    }
    delta = std::move(next);
  }
  return known;
}

}  // namespace

std::vector<SuitabilityResult> discover(const FactBase& facts) {
  const auto sub = ancestor_pairs(facts);

  // covers(S, Doc, C), keeping the smallest (Doc, C) per spec.
  std::map<Iri, Coverage> covers;
  for (const auto& [spec, wanted] : facts.associated_thing) {
    for (const auto& r : facts.contains_records_of) {  // ordered by (document, class)
      if (sub.contains({r.entity_class, wanted})) {
        covers.emplace(spec, Coverage{r.entity_class, r.document});
        break;
      }
    }
  }

  std::vector<SuitabilityResult> out;
  out.reserve(facts.indicators.size());
  for (const auto& ind : facts.indicators) {
    SuitabilityResult res{ind, {}, true};
    auto lo = facts.defined_by.lower_bound({ind.iri, ""});
    for (auto it = lo; it != facts.defined_by.end() && it->first == ind.iri; ++it) {
      auto c = covers.find(it->second);
      if (c == covers.end()) {
        res.suitable = false;
      } else {
        res.covered.emplace(it->second, c->second);
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

rdf::Graph export_discovered(const std::vector<SuitabilityResult>& results) {
  rdf::Graph g;
  const auto covered_by = rdf::iri(ns::kQoe, "coveredBy");
  const auto covering_class = rdf::iri(ns::kQoe, "coveringClass");
  for (const auto& r : results) {
    if (!r.suitable) continue;
    vocab::write_indicator(r.indicator, g);
    for (const auto& [node, cov] : r.covered) {
      auto subject = node.starts_with("_:") ? rdf::Term::blank(node.substr(2))
                                            : rdf::Term::iri(node);
      g.add(subject, covered_by, rdf::Term::iri(cov.document));
      g.add(subject, covering_class, rdf::Term::iri(cov.entity_class));
    }
  }
  return g;
}

}  // namespace forge::discovery
