#pragma once

#include <string>
#include <string_view>

#include "forge/rdf.hpp"

namespace forge::rdf {

// Parses the Turtle subset used by preambles, ontologies and catalogs:
// @prefix / PREFIX, IRIs, prefixed names, `a`, blank nodes `_:x`, quoted
// literals with `^^` datatype or `@lang`, bare integers/decimals/booleans,
// `;` and `,` lists and `#` comments. Blank-node labels are renamed to
// b0, b1, ... in order of first appearance.
//
// Throws SyntaxError (1-based line/column) or UnknownPrefixError.
Graph parse_turtle(std::string_view text);

// Deterministic Turtle output: prefixes sorted by label (only those used),
// then subjects, predicates and objects in Term order. Prefixed names are
// used wherever a declared prefix yields a valid local name.
std::string serialize_turtle(const Graph& g);

}  // namespace forge::rdf
