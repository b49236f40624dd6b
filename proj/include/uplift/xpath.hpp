#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uplift/errors.hpp"
#include "uplift/xml.hpp"

namespace uplift::xpath {

enum class StepKind {
  Child,      // element name test or "*"
  Attribute,  // @name (terminal)
  Text,       // text() (terminal)
};

struct PathStep {
  StepKind kind = StepKind::Child;
  std::string name;  // element name, "*", or attribute name
  // Child steps may carry one predicate:
  int position = 0;        // [n], 1-based; 0 = none
  std::string pred_attr;   // [@attr='value']; empty = none
  std::string pred_value;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Supported grammar: optional leading "/", steps separated by "/". A step is
// an element name (or "*") with an optional "[n]" or "[@attr='value']"
// predicate, "@attr", or "text()". A trailing "string()" marks string-value
// selection; it is not a node-selecting step and eval_xpath ignores it.
struct PathExpr {
  bool absolute = false;
  bool string_value = false;
  std::vector<PathStep> steps;
  std::string text;  // the source expression

  friend bool operator==(const PathExpr& a, const PathExpr& b) {
    return a.absolute == b.absolute && a.string_value == b.string_value && a.steps == b.steps;
  }
};

// Document-ordered, duplicate-free evaluation result.
using NodeSet = std::vector<const xml::XmlNode*>;

PathExpr compile_path(std::string_view expr);  // throws PathSyntaxError

// Evaluates the steps from `context` (an element). Absolute paths start at
// the document root regardless of context. No match yields an empty set.
NodeSet eval_xpath(const xml::XmlNode& context, const PathExpr& path);

// Value selection per the reference semantics: a path ending in text()
// yields one value per selected text node; @attr yields attribute values;
// anything else yields the string value of each matched element (a bare
// element path behaves as string()).
std::vector<std::string> select_values(const xml::XmlNode& context, const PathExpr& path);

}  // namespace uplift::xpath
