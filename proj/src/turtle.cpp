#include <cctype>

#include "uplift/mapping.hpp"

namespace uplift::rml::turtle {

namespace {

bool is_pname_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_pname_char(unsigned char c) { return is_pname_start(c) || std::isdigit(c) || c == '-' || c == '.'; }

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view in) : in_(in) {}

  TurtleDocument parse() {
    while (true) {
      skip_trivia();
      if (at_end()) break;
      if (peek() == '@') {
        parse_prefix_directive();
      } else {
        parse_statement();
      }
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const { throw TurtleSyntaxError(line_, reason); }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }
  char peek_at(std::size_t off) const { return pos_ + off < in_.size() ? in_[pos_ + off] : '\0'; }

  char take() {
    if (at_end()) fail("unexpected end of input");
    char c = in_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') take();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_trivia();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

  void parse_prefix_directive() {
    // @prefix label: <iri> .
    for (const char* p = "@prefix"; *p; ++p) {
      if (at_end() || take() != *p) fail("expected @prefix");
    }
    skip_trivia();
    std::string label;
    while (!at_end() && is_pname_char(static_cast<unsigned char>(peek()))) label += take();
    expect(':');
    skip_trivia();
    std::string ns = parse_iriref();
    expect('.');
    for (auto& [l, n] : doc_.prefixes) {
      if (l == label) {
        n = ns;  // later directive wins
        return;
      }
    }
    doc_.prefixes.emplace_back(std::move(label), std::move(ns));
  }

  std::string parse_iriref() {
    expect('<');
    std::string iri;
    while (true) {
      char c = take();
      if (c == '>') break;
      if (c == '\n') fail("newline inside IRI");
      if (c == '\\') {
        char e = take();
        if (e == 'u') iri += read_uchar(4);
        else if (e == 'U') iri += read_uchar(8);
        else fail("invalid escape in IRI");
      } else {
        iri += c;
      }
    }
    if (auto v = rdf::find_iri_violation(iri)) {
      fail("<" + iri + "> is not an absolute IRI: " + v->reason);
    }
    return iri;
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

  std::string expand_pname(const std::string& label, const std::string& local) {
    for (const auto& [l, ns] : doc_.prefixes) {
      if (l == label) return ns + local;
    }
    fail("undefined prefix '" + label + ":'");
  }

  rdf::RdfTerm parse_prefixed_name() {
    std::string label;
    while (!at_end() && is_pname_char(static_cast<unsigned char>(peek()))) label += take();
    expect(':');
    std::string local;
    while (!at_end() && is_pname_char(static_cast<unsigned char>(peek()))) local += take();
    // A trailing '.' belongs to the statement, not the local name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    return rdf::RdfTerm{rdf::TermKind::Iri, expand_pname(label, local), "", ""};
  }

  rdf::RdfTerm parse_literal() {
    std::string value;
    if (in_.substr(pos_).starts_with(R"(""")")) {
      pos_ += 3;
      while (true) {
        if (at_end()) fail("unterminated long string");
        char c = take();
        if (c == '"') {
          // a run of n >= 3 quotes closes the string and keeps n - 3 of them
          std::size_t quotes = 1;
          while (!at_end() && peek() == '"') {
            take();
            ++quotes;
          }
          if (quotes >= 3) {
            value.append(quotes - 3, '"');
            break;
          }
          value.append(quotes, '"');
        } else if (c == '\\') {
          value += read_escape();
        } else {
          value += c;
        }
      }
    } else {
      expect('"');
      while (true) {
        char c = take();
        if (c == '"') break;
        if (c == '\n') fail("newline in short string literal");
        if (c == '\\') {
          value += read_escape();
        } else {
          value += c;
        }
      }
    }
    rdf::RdfTerm t{rdf::TermKind::Literal, std::move(value), "", ""};
    if (peek() == '@') {
      take();
      std::string tag;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) tag += take();
      if (tag.empty()) fail("empty language tag");
      t.language = std::move(tag);
    } else if (peek() == '^' && peek_at(1) == '^') {
      take();
      take();
      skip_trivia();
      if (peek() == '<') {
        t.datatype = parse_iriref();
      } else {
        t.datatype = parse_prefixed_name().value;
      }
    }
    return t;
  }

  std::string read_escape() {
    char e = take();
    switch (e) {
      case 't': return "\t";
      case 'b': return "\b";
      case 'n': return "\n";
      case 'r': return "\r";
      case 'f': return "\f";
      case '"': return "\"";
      case '\'': return "'";
      case '\\': return "\\";
      case 'u': return read_uchar(4);
      case 'U': return read_uchar(8);
      default: fail(std::string("invalid string escape '\\") + e + "'");
    }
  }

  rdf::RdfTerm fresh_blank() {
    return rdf::RdfTerm{rdf::TermKind::BlankNode, "g" + std::to_string(blank_counter_++), "", ""};
  }

  // [ p1 o1 ; p2 o2 ] — emits the inner statements, returns the blank node.
  rdf::RdfTerm parse_property_list() {
    expect('[');
    rdf::RdfTerm node = fresh_blank();
    skip_trivia();
    if (peek() == ']') {
      take();
      return node;
    }
    parse_predicate_object_list(node);
    expect(']');
    return node;
  }

  rdf::RdfTerm parse_subject() {
    skip_trivia();
    char c = peek();
    if (c == '<') return rdf::RdfTerm{rdf::TermKind::Iri, parse_iriref(), "", ""};
    if (c == '[') return parse_property_list();
    if (c == '_' && peek_at(1) == ':') {
      pos_ += 2;
      std::string label;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) label += take();
      if (!rdf::is_valid_blank_label(label)) fail("invalid blank node label");
      return rdf::RdfTerm{rdf::TermKind::BlankNode, std::move(label), "", ""};
    }
    if (is_pname_start(static_cast<unsigned char>(c)) || c == ':') return parse_prefixed_name();
    fail("expected subject");
  }

  rdf::RdfTerm parse_predicate() {
    skip_trivia();
    char c = peek();
    if (c == '<') return rdf::RdfTerm{rdf::TermKind::Iri, parse_iriref(), "", ""};
    if (c == 'a' && !is_pname_char(static_cast<unsigned char>(peek_at(1))) && peek_at(1) != ':') {
      take();
      return rdf::RdfTerm{rdf::TermKind::Iri, vocab::rdf_type, "", ""};
    }
    if (is_pname_start(static_cast<unsigned char>(c)) || c == ':') return parse_prefixed_name();
    fail("expected predicate");
  }

  rdf::RdfTerm parse_object() {
    skip_trivia();
    char c = peek();
    if (c == '<') return rdf::RdfTerm{rdf::TermKind::Iri, parse_iriref(), "", ""};
    if (c == '"') return parse_literal();
    if (c == '[') return parse_property_list();
    if (c == '(') fail("collections are not supported");
    if (c == '_' && peek_at(1) == ':') {
      pos_ += 2;
      std::string label;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) label += take();
      if (!rdf::is_valid_blank_label(label)) fail("invalid blank node label");
      return rdf::RdfTerm{rdf::TermKind::BlankNode, std::move(label), "", ""};
    }
    if (is_pname_start(static_cast<unsigned char>(c)) || c == ':') return parse_prefixed_name();
    fail("expected object");
  }

  void parse_predicate_object_list(const rdf::RdfTerm& subject) {
    while (true) {
      rdf::RdfTerm predicate = parse_predicate();
      while (true) {
        rdf::RdfTerm object = parse_object();
        doc_.statements.push_back(Statement{subject, predicate, object});
        skip_trivia();
        if (peek() == ',') {
          take();
          continue;
        }
        break;
      }
      skip_trivia();
      if (peek() == ';') {
        take();
        skip_trivia();
        // allow trailing ';' before '.' or ']'
        if (peek() == '.' || peek() == ']') return;
        continue;
      }
      return;
    }
  }

  void parse_statement() {
    rdf::RdfTerm subject = parse_subject();
    skip_trivia();
    // A bare "[ ... ] ." statement is allowed.
    if (peek() == '.') {
      take();
      return;
    }
    parse_predicate_object_list(subject);
    expect('.');
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  int blank_counter_ = 0;
  TurtleDocument doc_;
};

}  // namespace

TurtleDocument parse_turtle(std::string_view text) {
  TurtleParser p(text);
  return p.parse();
}

}  // namespace uplift::rml::turtle
