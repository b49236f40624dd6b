#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "uplift/errors.hpp"

namespace uplift::xml {

enum class NodeKind { Element, Attribute, Text };

// One node of a parsed document. Elements own their attribute nodes and an
// ordered list of child elements/text nodes. Text nodes never have children;
// adjacent text is merged at parse time. `doc_order` is the node's position
// in document order (attributes come right after their owning element).
struct XmlNode {
  NodeKind kind = NodeKind::Element;
  std::string name;   // Element / Attribute
  std::string value;  // Attribute / Text
  XmlNode* parent = nullptr;
  std::uint32_t doc_order = 0;
  std::vector<std::unique_ptr<XmlNode>> children;
  std::vector<std::unique_ptr<XmlNode>> attributes;

  const XmlNode* attribute(std::string_view attr_name) const;
  const XmlNode& root() const;
};

using XmlDocument = std::unique_ptr<XmlNode>;

// Parses a well-formed XML document and returns the root element. The five
// predefined entities and numeric character references are resolved;
// comments and processing instructions are dropped. Whitespace-only text
// nodes are preserved.
XmlDocument parse_xml(std::string_view input);  // throws MalformedXmlError

// Values of the element's direct text-node children, in order.
std::vector<std::string> node_text(const XmlNode& element);

// String value: for elements, the concatenation of all descendant text in
// document order; for attributes and text nodes, the value itself.
std::string node_string(const XmlNode& node);

}  // namespace uplift::xml
