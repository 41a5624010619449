#include "forge/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "forge/error.hpp"
#include "forge/namespaces.hpp"

namespace forge::rdf {

namespace {

bool is_alpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_pn_chars(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-';
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Graph run() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        parse_at_prefix();
      } else if (starts_with_keyword("PREFIX") || starts_with_keyword("prefix")) {
        parse_sparql_prefix();
      } else {
        parse_triples();
        expect('.', "expected '.' after statement");
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string current_token() const {
    if (at_end()) return "<end of input>";
    std::size_t end = pos_;
    while (end < text_.size() && end - pos_ < 24 &&
           !std::isspace(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    if (end == pos_) return std::string(1, text_[pos_]);
    return std::string(text_.substr(pos_, end - pos_));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, col_, current_token(), message);
  }
  [[noreturn]] void fail_at(std::size_t line, std::size_t col,
                            std::string token, const std::string& message) const {
    throw SyntaxError(line, col, std::move(token), message);
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const std::string& message) {
    skip_ws();
    if (at_end() || peek() != c) fail(message);
    advance();
  }

  bool starts_with_keyword(std::string_view kw) const {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    char after = peek(kw.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r';
  }

  void parse_at_prefix() {
    if (text_.substr(pos_, 7) != "@prefix") fail("unsupported directive");
    for (int i = 0; i < 7; ++i) advance();
    skip_ws();
    auto [label, ns] = parse_prefix_body();
    expect('.', "expected '.' after @prefix");
    graph_.set_prefix(label, ns);
  }

  void parse_sparql_prefix() {
    for (int i = 0; i < 6; ++i) advance();
    skip_ws();
    auto [label, ns] = parse_prefix_body();
    graph_.set_prefix(label, ns);
  }

  std::pair<std::string, std::string> parse_prefix_body() {
    std::string label;
    if (!at_end() && is_alpha(peek())) {
      while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) {
        label += advance();
      }
    }
    if (!label.empty() && label.back() == '.') fail("prefix label ends in '.'");
    if (peek() != ':') fail("expected ':' in prefix declaration");
    advance();
    skip_ws();
    if (peek() != '<') fail("expected namespace IRI");
    return {label, parse_iriref()};
  }

  std::string parse_iriref() {
    std::size_t line = line_, col = col_;
    advance();  // '<'
    std::string out;
    while (!at_end() && peek() != '>') {
      char c = peek();
      if (c == '\n' || c == ' ' || c == '<' || c == '"') {
        fail("invalid character in IRI");
      }
      if (c == '\\') {
        advance();
        char kind = at_end() ? '\0' : advance();
        std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
        if (digits == 0) fail("invalid escape in IRI");
        append_utf8(out, parse_hex(digits));
        continue;
      }
      out += advance();
    }
    if (at_end()) fail_at(line, col, "<", "unterminated IRI");
    advance();  // '>'
    if (out.empty()) fail_at(line, col, "<>", "empty IRI");
    return out;
  }

  unsigned long parse_hex(std::size_t digits) {
    unsigned long cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
        fail("invalid unicode escape");
      }
      char c = advance();
      cp = cp * 16 + static_cast<unsigned long>(
                         is_digit(c) ? c - '0' : std::tolower(c) - 'a' + 10);
    }
    return cp;
  }

  // Prefixed name, or the bare keyword `a` when allow_a is set.
  Term parse_prefixed_name(bool allow_a) {
    std::size_t line = line_, col = col_;
    std::string prefix;
    while (!at_end() && (is_pn_chars(peek()) || peek() == '.') &&
           peek() != ':') {
      if (peek() == '.' && !(is_pn_chars(peek(1)) || peek(1) == '.')) break;
      prefix += advance();
    }
    if (peek() != ':') {
      if (allow_a && prefix == "a") return rdf_type();
      fail_at(line, col, prefix.empty() ? current_token() : prefix,
              "expected a term");
    }
    advance();  // ':'
    std::string local;
    auto local_char = [](char c) { return is_pn_chars(c) || c == ':'; };
    while (!at_end()) {
      char c = peek();
      if (local_char(c)) {
        local += advance();
      } else if (c == '.' && !local.empty() &&
                 (local_char(peek(1)) || peek(1) == '.')) {
        local += advance();
      } else {
        break;
      }
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) {
      throw UnknownPrefixError("line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": undeclared prefix '" +
                               prefix + ":'");
    }
    try {
      return Term::iri(it->second + local);
    } catch (const InvalidTermError& e) {
      fail_at(line, col, prefix + ":" + local, e.what());
    }
  }

  Term parse_iri_term(bool allow_a) {
    if (peek() == '<') {
      std::size_t line = line_, col = col_;
      std::string value = parse_iriref();
      try {
        return Term::iri(value);
      } catch (const InvalidTermError& e) {
        fail_at(line, col, "<" + value + ">", e.what());
      }
    }
    return parse_prefixed_name(allow_a);
  }

  Term parse_blank() {
    std::size_t line = line_, col = col_;
    advance();  // '_'
    if (peek() != ':') fail("expected ':' after '_'");
    advance();
    std::string label;
    while (!at_end() && (is_pn_chars(peek()) ||
                         (peek() == '.' && is_pn_chars(peek(1))))) {
      label += advance();
    }
    if (label.empty()) fail_at(line, col, "_:", "empty blank node label");
    auto it = blanks_.find(label);
    if (it == blanks_.end()) {
      it = blanks_.emplace(label, "b" + std::to_string(blanks_.size())).first;
    }
    return Term::blank(it->second);
  }

  Term parse_subject() {
    skip_ws();
    if (at_end()) fail("expected subject");
    if (peek() == '_' && peek(1) == ':') return parse_blank();
    if (peek() == '"' || peek() == '\'') fail("literal cannot be a subject");
    if (peek() == '[' || peek() == '(') fail("unsupported construct");
    return parse_iri_term(false);
  }

  Term parse_predicate() {
    skip_ws();
    if (at_end()) fail("expected predicate");
    if (peek() == '_' && peek(1) == ':') fail("blank node cannot be a predicate");
    if (peek() == '"') fail("literal cannot be a predicate");
    return parse_iri_term(true);
  }

  std::string parse_string() {
    std::size_t line = line_, col = col_;
    char quote = advance();
    if (peek() == quote && peek(1) == quote) fail("long strings are not supported");
    std::string out;
    while (true) {
      if (at_end()) fail_at(line, col, std::string(1, quote), "unterminated string");
      char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\n' || c == '\r') fail("newline in string literal");
      if (c == '\\') {
        advance();
        char e = at_end() ? '\0' : advance();
        switch (e) {
          case 't': out += '\t'; break;
          case 'b': out += '\b'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u': append_utf8(out, parse_hex(4)); break;
          case 'U': append_utf8(out, parse_hex(8)); break;
          default: fail("invalid escape sequence");
        }
        continue;
      }
      out += advance();
    }
    return out;
  }

  Term parse_number() {
    std::size_t line = line_, col = col_;
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical += advance();
    bool digits = false, dot = false, exponent = false;
    while (!at_end() && is_digit(peek())) {
      lexical += advance();
      digits = true;
    }
    if (peek() == '.' && is_digit(peek(1))) {
      dot = true;
      lexical += advance();
      while (!at_end() && is_digit(peek())) lexical += advance();
      digits = true;
    }
    if (digits && (peek() == 'e' || peek() == 'E')) {
      exponent = true;
      lexical += advance();
      if (peek() == '+' || peek() == '-') lexical += advance();
      if (!is_digit(peek())) fail("malformed exponent");
      while (!at_end() && is_digit(peek())) lexical += advance();
    }
    if (!digits) fail_at(line, col, lexical, "malformed number");
    const char* type = exponent ? "double" : dot ? "decimal" : "integer";
    return typed(lexical, type);
  }

  Term parse_object() {
    skip_ws();
    if (at_end()) fail("expected object");
    char c = peek();
    if (c == '_' && peek(1) == ':') return parse_blank();
    if (c == '[' || c == '(') fail("unsupported construct");
    if (c == '"' || c == '\'') {
      std::string lexical = parse_string();
      if (peek() == '^' && peek(1) == '^') {
        advance();
        advance();
        Term dt = parse_iri_term(false);
        return Term::literal(std::move(lexical), dt.value());
      }
      if (peek() == '@') {
        advance();
        std::string lang;
        while (!at_end() && (is_alpha(peek()) || is_digit(peek()) || peek() == '-')) {
          lang += advance();
        }
        if (lang.empty()) fail("empty language tag");
        return Term::literal(std::move(lexical), {}, std::move(lang));
      }
      return Term::literal(std::move(lexical));
    }
    if (is_digit(c) || ((c == '+' || c == '-') && (is_digit(peek(1)) || peek(1) == '.')) ||
        (c == '.' && is_digit(peek(1)))) {
      return parse_number();
    }
    for (std::string_view kw : {"true", "false"}) {
      if (text_.substr(pos_, kw.size()) == kw && !is_pn_chars(peek(kw.size())) &&
          peek(kw.size()) != ':') {
        for (std::size_t i = 0; i < kw.size(); ++i) advance();
        return typed(std::string(kw), "boolean");
      }
    }
    return parse_iri_term(false);
  }

  void parse_triples() {
    Term subject = parse_subject();
    while (true) {
      Term predicate = parse_predicate();
      while (true) {
        Term object = parse_object();
        graph_.add(subject, predicate, std::move(object));
        skip_ws();
        if (peek() != ',') break;
        advance();
      }
      skip_ws();
      if (peek() != ';') break;
      // Repeated ';' and a trailing ';' before '.' are legal.
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      if (peek() == '.' || at_end()) break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Graph graph_;
  std::map<std::string, std::string> blanks_;
};

bool valid_local(std::string_view local) {
  if (local.empty()) return false;
  auto ascii_pn = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  };
  if (!(std::isalnum(static_cast<unsigned char>(local.front())) ||
        local.front() == '_')) {
    return false;
  }
  if (local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(),
                     [&](char c) { return ascii_pn(c) || c == '.'; });
}

void escape_string(std::string& out, std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += "\\u00";
          out += hex[(c >> 4) & 0xF];
          out += hex[c & 0xF];
        } else {
          out += c;
        }
    }
  }
}

class Writer {
 public:
  explicit Writer(const Graph& g) : graph_(g) {
    // Longest namespace first so the most specific prefix wins.
    for (const auto& [label, ns] : g.prefixes()) candidates_.emplace_back(label, ns);
    std::stable_sort(candidates_.begin(), candidates_.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.size() > b.second.size();
                     });
  }

  std::string run() {
    std::string body;
    const Term* subject = nullptr;
    const Term* predicate = nullptr;
    for (const auto& t : graph_) {
      if (subject == nullptr || t.subject != *subject) {
        if (subject != nullptr) body += " .\n";
        body += term(t.subject);
        body += " ";
        body += term(t.predicate);
        body += " ";
        subject = &t.subject;
        predicate = &t.predicate;
      } else if (t.predicate != *predicate) {
        body += " ;\n    ";
        body += term(t.predicate);
        body += " ";
        predicate = &t.predicate;
      } else {
        body += ", ";
      }
      body += term(t.object);
    }
    if (subject != nullptr) body += " .\n";

    std::string out;
    for (const auto& [label, ns] : graph_.prefixes()) {
      if (!used_.contains(label)) continue;
      out += "@prefix " + label + ": <" + ns + "> .\n";
    }
    if (!out.empty() && !body.empty()) out += "\n";
    return out + body;
  }

 private:
  std::string iri(const std::string& value) {
    for (const auto& [label, ns] : candidates_) {
      if (value.size() >= ns.size() && value.compare(0, ns.size(), ns) == 0) {
        std::string_view local(value);
        local.remove_prefix(ns.size());
        if (valid_local(local)) {
          used_.insert(label);
          return label + ":" + std::string(local);
        }
      }
    }
    return "<" + value + ">";
  }

  std::string term(const Term& t) {
    switch (t.kind()) {
      case TermKind::kIri:
        return iri(t.value());
      case TermKind::kBlank:
        return "_:" + t.value();
      case TermKind::kLiteral: {
        std::string out = "\"";
        escape_string(out, t.value());
        out += "\"";
        if (!t.datatype().empty()) out += "^^" + iri(t.datatype());
        if (!t.language().empty()) out += "@" + t.language();
        return out;
      }
    }
    return {};
  }

  const Graph& graph_;
  std::vector<std::pair<std::string, std::string>> candidates_;
  std::set<std::string> used_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return Parser(text).run(); }

std::string serialize_turtle(const Graph& g) { return Writer(g).run(); }

}  // namespace forge::rdf
