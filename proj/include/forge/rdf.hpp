#pragma once

#include <compare>
#include <functional>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace forge::rdf {

enum class TermKind : unsigned char { kIri, kBlank, kLiteral };

// An RDF term. Literals carry at most one of datatype / language tag; an
// untagged literal with no datatype is a simple literal.
class Term {
 public:
  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::kIri; }
  bool is_blank() const noexcept { return kind_ == TermKind::kBlank; }
  bool is_literal() const noexcept { return kind_ == TermKind::kLiteral; }

  // IRI string, blank label, or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  auto operator<=>(const Term&) const = default;

  // N-Triples style rendering, for diagnostics.
  std::string to_string() const;

 private:
  Term(TermKind kind, std::string value, std::string datatype,
       std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_ = TermKind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

// Predicate is always an IRI and the subject never a literal; the
// constructor enforces both.
struct Triple {
  Triple(Term s, Term p, Term o);

  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

// Heterogeneous lookup key selecting every triple with a given subject.
struct SubjectKey {
  const Term& subject;
};
inline bool operator<(const Triple& t, const SubjectKey& k) {
  return t.subject < k.subject;
}
inline bool operator<(const SubjectKey& k, const Triple& t) {
  return k.subject < t.subject;
}

bool is_valid_prefix_label(std::string_view label);

class Graph {
 public:
  using TripleSet = std::set<Triple, std::less<>>;
  using const_iterator = TripleSet::const_iterator;

  // Returns false when the triple was already present.
  bool insert(Triple t);
  bool add(Term s, Term p, Term o) {
    return insert(Triple(std::move(s), std::move(p), std::move(o)));
  }
  bool erase(const Triple& t) { return triples_.erase(t) > 0; }

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }
  const TripleSet& triples() const noexcept { return triples_; }

  // All triples with the given subject, in graph order.
  std::vector<Triple> about(const Term& subject) const;
  std::vector<Term> objects(const Term& subject, const Term& predicate) const;
  std::vector<Term> subjects(const Term& predicate, const Term& object) const;
  bool has_type(const Term& subject, const Term& cls) const;

  void set_prefix(const std::string& label, const std::string& ns);
  const std::map<std::string, std::string>& prefixes() const noexcept {
    return prefixes_;
  }

  std::set<std::string> blank_labels() const;

  bool operator==(const Graph& other) const {
    return triples_ == other.triples_;
  }

 private:
  TripleSet triples_;
  std::map<std::string, std::string> prefixes_;
};

// Union of both triple sets. Blank nodes of g2 are relabelled so that the two
// blank-node scopes stay disjoint; g1 wins prefix conflicts.
Graph merge(const Graph& g1, const Graph& g2);

// True iff some bijection between blank nodes maps g1 onto g2 exactly.
bool isomorphic(const Graph& g1, const Graph& g2);

// Shorthands for common terms.
Term iri(std::string_view ns, std::string_view local);
Term rdf_type();
Term str(std::string lexical);
Term typed(std::string lexical, std::string_view xsd_local);

}  // namespace forge::rdf
