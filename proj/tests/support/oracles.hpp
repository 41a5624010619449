#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/ccsv.hpp"
#include "forge/dashboard.hpp"
#include "forge/match.hpp"
#include "forge/rdf.hpp"
#include "forge/vocab.hpp"

// Deliberately naive reference implementations used to check the real ones.
namespace forge::testing {

// Patterns evaluated left to right, each against every triple of g.
std::set<rdf::Binding> nested_loop_match(const rdf::Graph& g,
                                         const std::vector<rdf::TriplePattern>& patterns);

// Reflexive-transitive reachability over `nodes` via Floyd-Warshall.
class Reachability {
 public:
  Reachability(const std::set<std::string>& nodes,
               const std::set<std::pair<std::string, std::string>>& edges);
  bool reaches(const std::string& from, const std::string& to) const;
  std::set<std::string> from(const std::string& node) const;

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> r_;
};

struct OracleCoverage {
  std::string document;
  std::string entity_class;
};

struct OracleVerdict {
  bool suitable = false;
  std::map<std::string, OracleCoverage> covered;  // smallest (document, class)
};

// Enumerates every (indicator, spec, document) combination and tests the
// closure membership directly.
std::vector<OracleVerdict> discovery_oracle(const vocab::VocabularyRegistry& reg,
                                            const ccsv::CcsvBundle& bundle,
                                            const std::vector<vocab::IndicatorDef>& catalog);

struct OracleGroup {
  std::optional<std::string> key;
  double value = 0;
};

// Brute-force group-by for the dimension/measure layout produced by
// random_aggregate_bundle and the fixture: join through the reference column
// named in the viz, apply the filters row by row.
std::vector<OracleGroup> group_by_oracle(const ccsv::CcsvBundle& bundle,
                                         const dashboard::VizSpec& viz,
                                         const std::vector<dashboard::FilterExpr>& filters);

}  // namespace forge::testing
