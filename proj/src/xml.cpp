#include "uplift/xml.hpp"

#include <algorithm>
#include <cctype>

namespace uplift::xml {

const XmlNode* XmlNode::attribute(std::string_view attr_name) const {
  for (const auto& a : attributes) {
    if (a->name == attr_name) return a.get();
  }
  return nullptr;
}

const XmlNode& XmlNode::root() const {
  const XmlNode* n = this;
  while (n->parent != nullptr) n = n->parent;
  return *n;
}

namespace {

constexpr std::size_t kMaxDepth = 512;

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
}

bool is_xml_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  XmlDocument parse() {
    skip_bom();
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    XmlDocument root = parse_element(nullptr, 0);
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw MalformedXmlError(line_, col_, reason);
  }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  char peek_at(std::size_t off) const { return pos_ + off < in_.size() ? in_[pos_ + off] : '\0'; }

  char take() {
    if (at_end()) fail("unexpected end of input");
    char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

  bool try_consume(std::string_view s) {
    if (in_.substr(pos_).starts_with(s)) {
      for (std::size_t i = 0; i < s.size(); ++i) take();
      return true;
    }
    return false;
  }

  void skip_bom() {
    if (in_.substr(pos_).starts_with("\xEF\xBB\xBF")) pos_ += 3;
  }

  void skip_ws() {
    while (!at_end() && is_xml_ws(peek())) take();
  }

  // Whitespace, comments, and PIs outside the root element.
  void skip_misc() {
    while (!at_end()) {
      if (is_xml_ws(peek())) {
        take();
      } else if (in_.substr(pos_).starts_with("<!--")) {
        skip_comment();
      } else if (in_.substr(pos_).starts_with("<?")) {
        skip_pi();
      } else if (in_.substr(pos_).starts_with("<!DOCTYPE")) {
        fail("DOCTYPE is not supported");
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    try_consume("<!--");
    while (!at_end()) {
      if (try_consume("-->")) return;
      take();
    }
    fail("unterminated comment");
  }

  void skip_pi() {
    try_consume("<?");
    while (!at_end()) {
      if (try_consume("?>")) return;
      take();
    }
    fail("unterminated processing instruction");
  }

  std::string read_name() {
    if (at_end() || !is_name_start(static_cast<unsigned char>(peek()))) fail("expected a name");
    std::string name;
    name += take();
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) name += take();
    return name;
  }

  // Resolves &name; &#dd; &#xhh; starting after '&'.
  std::string read_reference() {
    std::string ent;
    while (!at_end() && peek() != ';') {
      ent += take();
      if (ent.size() > 10) fail("unterminated entity reference");
    }
    expect(';');
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "amp") return "&";
    if (ent == "apos") return "'";
    if (ent == "quot") return "\"";
    if (ent.size() > 1 && ent[0] == '#') {
      unsigned long cp = 0;
      bool ok = ent.size() > 1;
      if (ent[1] == 'x' || ent[1] == 'X') {
        ok = ent.size() > 2;
        for (std::size_t i = 2; ok && i < ent.size(); ++i) {
          char c = ent[i];
          cp <<= 4;
          if (c >= '0' && c <= '9') cp |= static_cast<unsigned long>(c - '0');
          else if (c >= 'a' && c <= 'f') cp |= static_cast<unsigned long>(c - 'a' + 10);
          else if (c >= 'A' && c <= 'F') cp |= static_cast<unsigned long>(c - 'A' + 10);
          else ok = false;
        }
      } else {
        for (std::size_t i = 1; ok && i < ent.size(); ++i) {
          char c = ent[i];
          if (c < '0' || c > '9') { ok = false; break; }
          cp = cp * 10 + static_cast<unsigned long>(c - '0');
        }
      }
      if (!ok || cp == 0 || cp > 0x10FFFF) fail("invalid character reference");
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
      } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      }
      return out;
    }
    fail("unknown entity '&" + ent + ";'");
  }

  std::string read_attr_value() {
    char quote = take();
    if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated attribute value");
      char c = peek();
      if (c == quote) {
        take();
        break;
      }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        take();
        value += read_reference();
      } else {
        take();
        // attribute-value normalization
        value += (c == '\t' || c == '\n' || c == '\r') ? ' ' : c;
      }
    }
    return value;
  }

  void append_text(XmlNode& parent, std::string text) {
    if (text.empty()) return;
    if (!parent.children.empty() && parent.children.back()->kind == NodeKind::Text) {
      parent.children.back()->value += text;
      return;
    }
    auto node = std::make_unique<XmlNode>();
    node->kind = NodeKind::Text;
    node->value = std::move(text);
    node->parent = &parent;
    node->doc_order = next_order();
    parent.children.push_back(std::move(node));
  }

  XmlDocument parse_element(XmlNode* parent, std::size_t depth) {
    if (depth > kMaxDepth) fail("document nested too deeply");
    expect('<');
    auto elem = std::make_unique<XmlNode>();
    elem->kind = NodeKind::Element;
    elem->parent = parent;
    elem->doc_order = next_order();
    elem->name = read_name();

    while (true) {
      bool had_ws = !at_end() && is_xml_ws(peek());
      skip_ws();
      if (at_end()) fail("unterminated start tag");
      if (peek() == '>') {
        take();
        break;
      }
      if (peek() == '/') {
        take();
        expect('>');
        return elem;  // empty element
      }
      if (!had_ws) fail("expected whitespace before attribute");
      std::string attr_name = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      std::string attr_value = read_attr_value();
      if (elem->attribute(attr_name) != nullptr) fail("duplicate attribute '" + attr_name + "'");
      auto attr = std::make_unique<XmlNode>();
      attr->kind = NodeKind::Attribute;
      attr->name = std::move(attr_name);
      attr->value = std::move(attr_value);
      attr->parent = elem.get();
      attr->doc_order = next_order();
      elem->attributes.push_back(std::move(attr));
    }

    // content until matching end tag
    std::string text;
    while (true) {
      if (at_end()) fail("unterminated element <" + elem->name + ">");
      char c = peek();
      if (c == '<') {
        if (try_consume("<![CDATA[")) {
          while (!at_end() && !in_.substr(pos_).starts_with("]]>")) text += take();
          if (!try_consume("]]>")) fail("unterminated CDATA section");
          continue;
        }
        if (in_.substr(pos_).starts_with("<!--")) {
          append_text(*elem, std::move(text));
          text.clear();
          skip_comment();
          continue;
        }
        if (in_.substr(pos_).starts_with("<?")) {
          append_text(*elem, std::move(text));
          text.clear();
          skip_pi();
          continue;
        }
        if (peek_at(1) == '/') {
          append_text(*elem, std::move(text));
          take();
          take();
          std::string end_name = read_name();
          if (end_name != elem->name) {
            fail("end tag </" + end_name + "> does not match <" + elem->name + ">");
          }
          skip_ws();
          expect('>');
          return elem;
        }
        append_text(*elem, std::move(text));
        text.clear();
        elem->children.push_back(parse_element(elem.get(), depth + 1));
      } else if (c == '&') {
        take();
        text += read_reference();
      } else {
        text += take();
      }
    }
  }

  std::uint32_t next_order() { return order_++; }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::uint32_t order_ = 0;
};

}  // namespace

XmlDocument parse_xml(std::string_view input) {
  // XML line-end normalization; the copy is only taken when CRs are present.
  if (input.find('\r') != std::string_view::npos) {
    std::string normalized;
    normalized.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (input[i] == '\r') {
        normalized += '\n';
        if (i + 1 < input.size() && input[i + 1] == '\n') ++i;
      } else {
        normalized += input[i];
      }
    }
    Parser p(normalized);
    return p.parse();
  }
  Parser p(input);
  return p.parse();
}

std::vector<std::string> node_text(const XmlNode& element) {
  std::vector<std::string> out;
  for (const auto& c : element.children) {
    if (c->kind == NodeKind::Text) out.push_back(c->value);
  }
  return out;
}

namespace {

void collect_text(const XmlNode& n, std::string& out) {
  for (const auto& c : n.children) {
    if (c->kind == NodeKind::Text) {
      out += c->value;
    } else if (c->kind == NodeKind::Element) {
      collect_text(*c, out);
    }
  }
}

}  // namespace

std::string node_string(const XmlNode& node) {
  if (node.kind != NodeKind::Element) return node.value;
  std::string out;
  collect_text(node, out);
  return out;
}

}  // namespace uplift::xml
