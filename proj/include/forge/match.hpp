#pragma once

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "forge/rdf.hpp"

namespace forge::rdf {

struct Variable {
  std::string name;
  auto operator<=>(const Variable&) const = default;
};

inline Variable var(std::string name) { return Variable{std::move(name)}; }

using PatternSlot = std::variant<Term, Variable>;

struct TriplePattern {
  PatternSlot subject;
  PatternSlot predicate;
  PatternSlot object;
};

using Binding = std::map<std::string, Term>;

// Basic graph pattern evaluation. Variables shared between patterns express
// joins. Returns every solution exactly once, sorted.
std::vector<Binding> match(const Graph& g, std::span<const TriplePattern> patterns);

inline std::vector<Binding> match(const Graph& g,
                                  std::initializer_list<TriplePattern> patterns) {
  return match(g, std::span<const TriplePattern>(patterns.begin(), patterns.size()));
}

}  // namespace forge::rdf
