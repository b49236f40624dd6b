#include <doctest.h>

#include <string>

#include "uplift/xml.hpp"

using namespace uplift;
using namespace uplift::xml;

TEST_CASE("basic document structure") {
  XmlDocument doc = parse_xml("<?xml version=\"1.0\"?><a x=\"1\"><b>t</b><c/></a>");
  const XmlNode& root = *doc;
  CHECK(root.kind == NodeKind::Element);
  CHECK(root.name == "a");
  REQUIRE(root.attribute("x") != nullptr);
  CHECK(root.attribute("x")->value == "1");
  CHECK(root.attribute("missing") == nullptr);
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0]->name == "b");
  CHECK(root.children[1]->name == "c");
  CHECK(root.children[0]->parent == &root);
  CHECK(&root.children[0]->root() == &root);
  // document order is strictly increasing
  CHECK(root.doc_order < root.children[0]->doc_order);
  CHECK(root.children[0]->doc_order < root.children[1]->doc_order);
}

TEST_CASE("text vs string value") {
  XmlDocument doc = parse_xml("<a>x<b>y</b>z</a>");
  auto direct = node_text(*doc);
  REQUIRE(direct.size() == 2);
  CHECK(direct[0] == "x");
  CHECK(direct[1] == "z");
  CHECK(node_string(*doc) == "xyz");
  CHECK(node_string(*doc->children[1]) == "y");
}

TEST_CASE("whitespace-only text nodes are preserved") {
  XmlDocument doc = parse_xml("<a>  <b>y</b>\n\t</a>");
  auto direct = node_text(*doc);
  REQUIRE(direct.size() == 2);
  CHECK(direct[0] == "  ");
  CHECK(direct[1] == "\n\t");
  CHECK(node_string(*doc) == "  y\n\t");
}

TEST_CASE("entities and character references") {
  XmlDocument doc = parse_xml("<a>&amp;&lt;&gt;&quot;&apos;&#65;&#x41;&#xFC;</a>");
  CHECK(node_string(*doc) == "&<>\"'AA\xC3\xBC");
  XmlDocument attr_doc = parse_xml("<a v=\"&amp;&#10;x\"/>");
  // character references survive attribute-value normalization
  CHECK(attr_doc->attribute("v")->value == "&\nx");
}

TEST_CASE("attribute value normalization folds raw whitespace") {
  XmlDocument doc = parse_xml("<a v=\"one\ttwo\nthree\"/>");
  CHECK(doc->attribute("v")->value == "one two three");
}

TEST_CASE("comments and processing instructions are dropped") {
  XmlDocument doc = parse_xml("<a>x<!-- note -->y<?pi data?>z</a>");
  // adjacent text merges across dropped nodes
  auto direct = node_text(*doc);
  REQUIRE(direct.size() == 1);
  CHECK(direct[0] == "xyz");
}

TEST_CASE("cdata is taken verbatim") {
  XmlDocument doc = parse_xml("<a><![CDATA[1 < 2 & so <on>]]></a>");
  CHECK(node_string(*doc) == "1 < 2 & so <on>");
}

TEST_CASE("line endings normalize to newline") {
  XmlDocument doc = parse_xml("<a>x\r\ny\rz</a>");
  CHECK(node_string(*doc) == "x\ny\nz");
}

TEST_CASE("malformed input reports positions") {
  try {
    parse_xml("<a>\n  <b></c>\n</a>");
    FAIL("expected MalformedXmlError");
  } catch (const MalformedXmlError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_xml(""), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a x=\"1\" x=\"2\"/>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a>&unknown;</a>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a></a><b></b>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<!DOCTYPE a><a/>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a v=unquoted></a>"), MalformedXmlError);
  CHECK_THROWS_AS(parse_xml("<a><b attr=\"<\"/></a>"), MalformedXmlError);
}

TEST_CASE("bom and surrounding misc are accepted") {
  XmlDocument doc = parse_xml("\xEF\xBB\xBF<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- c -->\n<a/>\n<!-- d -->\n");
  CHECK(doc->name == "a");
}
