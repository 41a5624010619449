#include "forge/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <utility>

#include "forge/error.hpp"
#include "forge/namespaces.hpp"

namespace forge {
namespace ns {

const std::map<std::string, std::string>& standard_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"rdf", std::string(kRdf)},       {"rdfs", std::string(kRdfs)},
      {"xsd", std::string(kXsd)},       {"owl", std::string(kOwl)},
      {"prov", std::string(kProv)},     {"dcterms", std::string(kDcterms)},
      {"vstoi", std::string(kVstoi)},   {"hasco", std::string(kHasco)},
      {"hacito", std::string(kHacito)}, {"qoe", std::string(kQoe)},
      {"qoe-m", std::string(kQoeM)},    {"ccsv", std::string(kCcsv)},
      {"kg", std::string(kKg)},
  };
  return prefixes;
}

std::string expand(std::string_view name) {
  if (name.find("://") != std::string_view::npos) return std::string(name);
  auto colon = name.find(':');
  if (colon == std::string_view::npos) {
    throw UnknownPrefixError("'" + std::string(name) + "' is not a prefixed name");
  }
  const auto& prefixes = standard_prefixes();
  auto it = prefixes.find(std::string(name.substr(0, colon)));
  if (it == prefixes.end()) {
    throw UnknownPrefixError("undeclared prefix '" +
                             std::string(name.substr(0, colon)) + "'");
  }
  return it->second + std::string(name.substr(colon + 1));
}

std::string local_name(std::string_view iri) {
  auto pos = iri.find_last_of("#/");
  return std::string(pos == std::string_view::npos ? iri : iri.substr(pos + 1));
}

std::string namespace_of(std::string_view iri) {
  auto pos = iri.find_last_of("#/");
  return std::string(pos == std::string_view::npos ? std::string_view{}
                                                   : iri.substr(0, pos + 1));
}

}  // namespace ns

namespace rdf {

namespace {

bool is_blank_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

void check_iri(std::string_view value) {
  if (value.empty()) throw InvalidTermError("empty IRI");
  for (char c : value) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '\\' || c == '^' || c == '`' || c == '|') {
      throw InvalidTermError("invalid character in IRI <" + std::string(value) +
                             ">");
    }
  }
}

}  // namespace

Term Term::iri(std::string value) {
  check_iri(value);
  return Term(TermKind::kIri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty() || !std::all_of(label.begin(), label.end(),
                                    is_blank_label_char)) {
    throw InvalidTermError("invalid blank node label '" + label + "'");
  }
  return Term(TermKind::kBlank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string language) {
  if (!datatype.empty() && !language.empty()) {
    throw InvalidTermError("literal cannot carry both datatype and language");
  }
  if (!datatype.empty()) check_iri(datatype);
  if (!language.empty()) {
    bool ok = std::isalpha(static_cast<unsigned char>(language.front())) &&
              language.back() != '-';
    for (std::size_t i = 0; ok && i < language.size(); ++i) {
      char c = language[i];
      ok = std::isalnum(static_cast<unsigned char>(c)) ||
           (c == '-' && language[i - 1] != '-');
    }
    if (!ok) throw InvalidTermError("invalid language tag '" + language + "'");
  }
  return Term(TermKind::kLiteral, std::move(lexical), std::move(datatype),
              std::move(language));
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::kIri:
      return "<" + value_ + ">";
    case TermKind::kBlank:
      return "_:" + value_;
    case TermKind::kLiteral: {
      std::string out = "\"" + value_ + "\"";
      if (!datatype_.empty()) out += "^^<" + datatype_ + ">";
      if (!language_.empty()) out += "@" + language_;
      return out;
    }
  }
  return {};
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (subject.is_literal()) {
    throw InvalidTermError("literal in subject position: " +
                           subject.to_string());
  }
  if (!predicate.is_iri()) {
    throw InvalidTermError("predicate must be an IRI: " +
                           predicate.to_string());
  }
}

bool is_valid_prefix_label(std::string_view label) {
  if (label.empty()) return true;
  if (!std::isalpha(static_cast<unsigned char>(label.front()))) return false;
  if (label.back() == '.') return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.';
  });
}

bool Graph::insert(Triple t) { return triples_.insert(std::move(t)).second; }

std::vector<Triple> Graph::about(const Term& subject) const {
  std::vector<Triple> out;
  auto [first, last] = triples_.equal_range(SubjectKey{subject});
  out.assign(first, last);
  return out;
}

std::vector<Term> Graph::objects(const Term& subject,
                                 const Term& predicate) const {
  std::vector<Term> out;
  for (const auto& t : about(subject)) {
    if (t.predicate == predicate) out.push_back(t.object);
  }
  return out;
}

std::vector<Term> Graph::subjects(const Term& predicate,
                                  const Term& object) const {
  std::vector<Term> out;
  for (const auto& t : triples_) {
    if (t.predicate == predicate && t.object == object) {
      out.push_back(t.subject);
    }
  }
  return out;
}

bool Graph::has_type(const Term& subject, const Term& cls) const {
  return triples_.contains(Triple(subject, rdf_type(), cls));
}

void Graph::set_prefix(const std::string& label, const std::string& ns) {
  if (!is_valid_prefix_label(label)) {
    throw InvalidTermError("invalid prefix label '" + label + "'");
  }
  check_iri(ns);
  prefixes_[label] = ns;
}

std::set<std::string> Graph::blank_labels() const {
  std::set<std::string> out;
  for (const auto& t : triples_) {
    if (t.subject.is_blank()) out.insert(t.subject.value());
    if (t.object.is_blank()) out.insert(t.object.value());
  }
  return out;
}

Graph merge(const Graph& g1, const Graph& g2) {
  Graph out = g1;
  for (const auto& [label, ns] : g2.prefixes()) {
    if (!out.prefixes().contains(label)) out.set_prefix(label, ns);
  }

  std::set<std::string> taken = g1.blank_labels();
  std::map<std::string, std::string> renamed;
  std::size_t counter = 0;
  auto relabel = [&](const Term& t) -> Term {
    if (!t.is_blank()) return t;
    auto it = renamed.find(t.value());
    if (it != renamed.end()) return Term::blank(it->second);
    std::string label = t.value();
    while (taken.contains(label)) {
      label = t.value() + "-m" + std::to_string(counter++);
    }
    taken.insert(label);
    renamed.emplace(t.value(), label);
    return Term::blank(label);
  };
  // Reserve g2's own labels first so renamed nodes never collide with them.
  for (const auto& label : g2.blank_labels()) {
    if (!taken.contains(label)) {
      taken.insert(label);
      renamed.emplace(label, label);
    }
  }
  for (const auto& t : g2) {
    out.insert(Triple(relabel(t.subject), t.predicate, relabel(t.object)));
  }
  return out;
}

namespace {

bool has_blank(const Triple& t) {
  return t.subject.is_blank() || t.object.is_blank();
}

// Colour refinement over the blank nodes of one graph. The initial colour of
// every blank node is 0; each round hashes the node's colour with the sorted
// descriptions of its incident triples.
std::map<std::string, std::size_t> refine_colours(
    const std::vector<const Triple*>& blank_triples,
    const std::set<std::string>& labels, std::size_t rounds) {
  std::map<std::string, std::size_t> colour;
  for (const auto& l : labels) colour[l] = 0;

  auto render = [&](const Term& t) -> std::string {
    if (t.is_blank()) return "_" + std::to_string(colour[t.value()]);
    return t.to_string();
  };

  for (std::size_t r = 0; r < rounds; ++r) {
    std::map<std::string, std::vector<std::string>> incident;
    for (const Triple* t : blank_triples) {
      std::string desc = render(t->subject) + " " + t->predicate.value() +
                         " " + render(t->object);
      if (t->subject.is_blank()) incident[t->subject.value()].push_back("S" + desc);
      if (t->object.is_blank()) incident[t->object.value()].push_back("O" + desc);
    }
    std::map<std::string, std::size_t> next;
    for (auto& [label, descs] : incident) {
      std::sort(descs.begin(), descs.end());
      std::string joined = std::to_string(colour[label]);
      for (const auto& d : descs) joined += "|" + d;
      next[label] = std::hash<std::string>{}(joined);
    }
    colour = std::move(next);
  }
  return colour;
}

struct IsoSearch {
  const Graph& g2;
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> candidates;
  std::map<std::string, std::vector<const Triple*>> incident;
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;

  Term map_term(const Term& t) const {
    if (!t.is_blank()) return t;
    return Term::blank(mapping.at(t.value()));
  }

  bool consistent(const std::string& node) const {
    for (const Triple* t : incident.at(node)) {
      if (t->subject.is_blank() && !mapping.contains(t->subject.value())) continue;
      if (t->object.is_blank() && !mapping.contains(t->object.value())) continue;
      if (!g2.contains(Triple(map_term(t->subject), t->predicate,
                              map_term(t->object)))) {
        return false;
      }
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::string& node = order[depth];
    for (const auto& cand : candidates[node]) {
      if (used.contains(cand)) continue;
      mapping[node] = cand;
      used.insert(cand);
      if (consistent(node) && search(depth + 1)) return true;
      used.erase(cand);
      mapping.erase(node);
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.size() != g2.size()) return false;

  std::vector<const Triple*> b1;
  std::vector<const Triple*> b2;
  for (const auto& t : g1) {
    if (has_blank(t)) {
      b1.push_back(&t);
    } else if (!g2.contains(t)) {
      return false;
    }
  }
  for (const auto& t : g2) {
    if (has_blank(t)) b2.push_back(&t);
  }
  if (b1.size() != b2.size()) return false;

  auto labels1 = g1.blank_labels();
  auto labels2 = g2.blank_labels();
  if (labels1.size() != labels2.size()) return false;
  if (labels1.empty()) return true;

  const std::size_t rounds = std::min<std::size_t>(labels1.size(), 8) + 1;
  auto c1 = refine_colours(b1, labels1, rounds);
  auto c2 = refine_colours(b2, labels2, rounds);

  std::map<std::size_t, std::vector<std::string>> by_colour2;
  for (const auto& [label, c] : c2) by_colour2[c].push_back(label);
  std::map<std::size_t, std::size_t> count1;
  for (const auto& [label, c] : c1) ++count1[c];
  for (const auto& [c, n] : count1) {
    auto it = by_colour2.find(c);
    if (it == by_colour2.end() || it->second.size() != n) return false;
  }

  IsoSearch search{g2, {}, {}, {}, {}, {}};
  for (const auto& [label, c] : c1) {
    search.order.push_back(label);
    search.candidates[label] = by_colour2[c];
    search.incident[label];
  }
  for (const Triple* t : b1) {
    if (t->subject.is_blank()) search.incident[t->subject.value()].push_back(t);
    if (t->object.is_blank() && t->object != t->subject) {
      search.incident[t->object.value()].push_back(t);
    }
  }
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return search.candidates[a].size() <
                            search.candidates[b].size();
                   });
  return search.search(0);
}

Term iri(std::string_view ns, std::string_view local) {
  return Term::iri(ns::iri(ns, local));
}

Term rdf_type() {
  static const Term type = iri(ns::kRdf, "type");
  return type;
}

Term str(std::string lexical) { return Term::literal(std::move(lexical)); }

Term typed(std::string lexical, std::string_view xsd_local) {
  return Term::literal(std::move(lexical), ns::iri(ns::kXsd, xsd_local));
}

}  // namespace rdf
}  // namespace forge
