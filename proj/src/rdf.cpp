#include "uplift/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <unordered_map>

namespace uplift::rdf {

namespace {

bool is_scheme_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool is_scheme_char(char c) {
  return is_scheme_start(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

const char* forbidden_char_reason(unsigned char c) {
  switch (c) {
    case ' ': return "space";
    case '<': return "'<'";
    case '>': return "'>'";
    case '"': return "'\"'";
    case '{': return "'{'";
    case '}': return "'}'";
    case '|': return "'|'";
    case '\\': return "backslash";
    case '^': return "'^'";
    case '`': return "backtick";
    default:
      if (c < 0x20 || c == 0x7F) return "control character";
      return nullptr;
  }
}

}  // namespace

std::optional<IriViolation> find_iri_violation(std::string_view text) {
  if (text.empty()) return IriViolation{1, "empty string has no scheme"};

  for (std::size_t i = 0; i < text.size(); ++i) {
    if (const char* reason = forbidden_char_reason(static_cast<unsigned char>(text[i]))) {
      return IriViolation{i + 1, std::string(reason) + " is not allowed in an IRI"};
    }
  }

  auto colon = text.find(':');
  if (colon == std::string_view::npos) return IriViolation{1, "missing scheme"};
  if (colon == 0) return IriViolation{1, "empty scheme"};
  if (!is_scheme_start(text[0])) return IriViolation{1, "scheme must start with a letter"};
  for (std::size_t i = 1; i < colon; ++i) {
    if (!is_scheme_char(text[i])) {
      return IriViolation{i + 1, "invalid character in scheme"};
    }
  }
  return std::nullopt;
}

RdfTerm make_iri(const std::string& text) {
  if (auto v = find_iri_violation(text)) {
    throw InvalidIriError(v->position, v->reason);
  }
  return RdfTerm{TermKind::Iri, text, "", ""};
}

RdfTerm make_literal(const std::string& lexical,
                     const std::optional<std::string>& datatype,
                     const std::optional<std::string>& language) {
  if (datatype && language) throw ConflictingQualifiersError();
  RdfTerm t;
  t.kind = TermKind::Literal;
  t.value = lexical;
  if (datatype) t.datatype = *datatype;
  if (language) t.language = *language;
  return t;
}

bool is_valid_blank_label(std::string_view label) {
  if (label.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(label[0]))) return false;
  return std::all_of(label.begin() + 1, label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

RdfTerm make_blank_node(const std::string& label) {
  if (!is_valid_blank_label(label)) {
    throw TripleConstraintError("invalid blank node label: " + label);
  }
  return RdfTerm{TermKind::BlankNode, label, "", ""};
}

Triple make_triple(RdfTerm subject, RdfTerm predicate, RdfTerm object) {
  if (subject.kind == TermKind::Literal) {
    throw TripleConstraintError("triple subject cannot be a literal");
  }
  if (predicate.kind != TermKind::Iri) {
    throw TripleConstraintError("triple predicate must be an IRI");
  }
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

std::size_t TermHash::operator()(const RdfTerm& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(t.kind));
  if (!t.datatype.empty()) mix(std::hash<std::string>{}(t.datatype));
  if (!t.language.empty()) mix(std::hash<std::string>{}(t.language));
  return h;
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  TermHash th;
  std::size_t h = th(t.subject);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(th(t.predicate));
  mix(th(t.object));
  return h;
}

bool Graph::insert(Triple t) { return triples_.insert(std::move(t)).second; }

void Graph::merge(Graph&& other) {
  if (triples_.empty()) {
    triples_ = std::move(other.triples_);
    return;
  }
  for (auto& t : other.triples_) triples_.insert(t);
  other.triples_.clear();
}

namespace {

void append_escaped_literal(std::string& out, std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          out += "\\u00";
          out += hex[(c >> 4) & 0xF];
          out += hex[c & 0xF];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

}  // namespace

std::string to_ntriples(const RdfTerm& term) {
  std::string out;
  switch (term.kind) {
    case TermKind::Iri:
      out += '<';
      out += term.value;
      out += '>';
      break;
    case TermKind::BlankNode:
      out += "_:";
      out += term.value;
      break;
    case TermKind::Literal:
      append_escaped_literal(out, term.value);
      if (!term.language.empty()) {
        out += '@';
        out += term.language;
      } else if (!term.datatype.empty()) {
        out += "^^<";
        out += term.datatype;
        out += '>';
      }
      break;
  }
  return out;
}

std::string serialize_ntriples(const Graph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.size());
  for (const auto& t : g) {
    std::string line = to_ntriples(t.subject);
    line += ' ';
    line += to_ntriples(t.predicate);
    line += ' ';
    line += to_ntriples(t.object);
    line += " .\n";
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size();
  out.reserve(total);
  for (const auto& l : lines) out += l;
  return out;
}

namespace {

// Line-oriented N-Triples reader.
class NtLine {
 public:
  NtLine(std::string_view s, std::size_t line_no) : s_(s), line_(line_no) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& reason) const { throw NtriplesSyntaxError(line_, reason); }

  char take() {
    if (pos_ >= s_.size()) fail("unexpected end of line");
    return s_[pos_++];
  }

  void expect(char c) {
    if (take() != c) fail(std::string("expected '") + c + "'");
  }

  std::string read_uchar(int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = take();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<unsigned long>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<unsigned long>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<unsigned long>(c - 'A' + 10);
      else fail("invalid hex digit in escape");
    }
    // encode code point as UTF-8
    std::string out;
    if (cp <= 0x7F) {
      out += static_cast<char>(cp);
    } else if (cp <= 0x7FF) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0xFFFF) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0x10FFFF) {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      fail("code point out of range");
    }
    return out;
  }

  RdfTerm read_iri() {
    expect('<');
    std::string value;
    while (true) {
      char c = take();
      if (c == '>') break;
      if (c == '\\') {
        char e = take();
        if (e == 'u') value += read_uchar(4);
        else if (e == 'U') value += read_uchar(8);
        else fail("invalid escape in IRI");
      } else {
        value += c;
      }
    }
    if (auto v = find_iri_violation(value)) fail("invalid IRI <" + value + ">: " + v->reason);
    return RdfTerm{TermKind::Iri, std::move(value), "", ""};
  }

  RdfTerm read_blank() {
    expect('_');
    expect(':');
    std::string label;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        label += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (!is_valid_blank_label(label)) fail("invalid blank node label");
    return RdfTerm{TermKind::BlankNode, std::move(label), "", ""};
  }

  RdfTerm read_literal() {
    expect('"');
    std::string value;
    while (true) {
      char c = take();
      if (c == '"') break;
      if (c == '\\') {
        char e = take();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u': value += read_uchar(4); break;
          case 'U': value += read_uchar(8); break;
          default: fail("invalid escape in literal");
        }
      } else {
        value += c;
      }
    }
    RdfTerm t{TermKind::Literal, std::move(value), "", ""};
    if (peek() == '@') {
      ++pos_;
      std::string tag;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) {
        tag += s_[pos_++];
      }
      if (tag.empty()) fail("empty language tag");
      t.language = std::move(tag);
    } else if (peek() == '^') {
      ++pos_;
      expect('^');
      RdfTerm dt = read_iri();
      t.datatype = std::move(dt.value);
    }
    return t;
  }

  RdfTerm read_subject() {
    skip_ws();
    if (peek() == '<') return read_iri();
    if (peek() == '_') return read_blank();
    fail("expected IRI or blank node as subject");
  }

  RdfTerm read_predicate() {
    skip_ws();
    if (peek() == '<') return read_iri();
    fail("expected IRI as predicate");
  }

  RdfTerm read_object() {
    skip_ws();
    if (peek() == '<') return read_iri();
    if (peek() == '_') return read_blank();
    if (peek() == '"') return read_literal();
    fail("expected IRI, blank node, or literal as object");
  }

  void read_terminator() {
    skip_ws();
    expect('.');
    if (!at_end() && peek() != '#') fail("unexpected content after '.'");
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) break;
    auto nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    start = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    NtLine reader(line, line_no);
    if (reader.at_end()) continue;
    if (reader.peek() == '#') continue;

    RdfTerm s = reader.read_subject();
    RdfTerm p = reader.read_predicate();
    RdfTerm o = reader.read_object();
    reader.read_terminator();
    g.insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  return g;
}

namespace {

bool has_blank(const Triple& t) {
  return t.subject.kind == TermKind::BlankNode || t.object.kind == TermKind::BlankNode;
}

// Blank-label bijection search. Graphs with blank nodes are small here
// (per-document scale), so backtracking over signature-compatible candidates
// is enough.
struct BlankMatcher {
  std::vector<Triple> a_triples;  // triples of `a` containing blank nodes
  const Graph* b = nullptr;
  std::unordered_map<std::string, std::string> a_to_b;
  std::unordered_map<std::string, std::string> b_to_a;

  bool match(std::size_t idx) {
    if (idx == a_triples.size()) return true;
    const Triple& t = a_triples[idx];
    for (const Triple& u : *b) {
      if (!has_blank(u)) continue;
      if (try_bind(t, u)) {
        if (match(idx + 1)) return true;
        unbind(t, u);
      }
    }
    return false;
  }

  bool terms_compatible(const RdfTerm& x, const RdfTerm& y) {
    if (x.kind == TermKind::BlankNode) {
      if (y.kind != TermKind::BlankNode) return false;
      auto it = a_to_b.find(x.value);
      if (it != a_to_b.end()) return it->second == y.value;
      auto jt = b_to_a.find(y.value);
      return jt == b_to_a.end();
    }
    return x == y;
  }

  bool try_bind(const Triple& t, const Triple& u) {
    if (!terms_compatible(t.subject, u.subject)) return false;
    if (t.predicate != u.predicate) return false;
    if (!terms_compatible(t.object, u.object)) return false;
    bind_term(t.subject, u.subject);
    bind_term(t.object, u.object);
    return true;
  }

  void bind_term(const RdfTerm& x, const RdfTerm& y) {
    if (x.kind == TermKind::BlankNode && !a_to_b.contains(x.value)) {
      a_to_b.emplace(x.value, y.value);
      b_to_a.emplace(y.value, x.value);
      bound.emplace_back(x.value, y.value);
    }
  }

  void unbind(const Triple& t, const Triple& u) {
    // Remove bindings introduced by this pair (they are the most recent ones).
    auto maybe_pop = [&](const RdfTerm& x, const RdfTerm& y) {
      if (x.kind == TermKind::BlankNode && !bound.empty() && bound.back().first == x.value &&
          bound.back().second == y.value) {
        a_to_b.erase(x.value);
        b_to_a.erase(y.value);
        bound.pop_back();
      }
    };
    maybe_pop(t.object, u.object);
    maybe_pop(t.subject, u.subject);
  }

  std::vector<std::pair<std::string, std::string>> bound;
};

}  // namespace

bool graph_equal(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;

  std::size_t a_blank = 0;
  std::size_t b_blank = 0;
  for (const auto& t : a) {
    if (has_blank(t)) {
      ++a_blank;
    } else if (!b.contains(t)) {
      return false;
    }
  }
  for (const auto& t : b) {
    if (has_blank(t)) ++b_blank;
  }
  if (a_blank != b_blank) return false;
  if (a_blank == 0) return true;

  BlankMatcher m;
  m.b = &b;
  for (const auto& t : a) {
    if (has_blank(t)) m.a_triples.push_back(t);
  }
  return m.match(0);
}

}  // namespace uplift::rdf
