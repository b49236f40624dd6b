#include "uplift/xpath.hpp"

#include <algorithm>
#include <cctype>

namespace uplift::xpath {

namespace {

bool is_name_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.' || c == ':';
}

class PathCompiler {
 public:
  explicit PathCompiler(std::string_view expr) : expr_(expr) {}

  PathExpr compile() {
    PathExpr path;
    path.text = std::string(expr_);
    if (expr_.empty()) fail(1, "empty path");

    if (peek() == '/') {
      ++pos_;
      path.absolute = true;
    }
    bool terminal_seen = false;
    while (true) {
      std::size_t seg_start = pos_ + 1;  // 1-based
      if (pos_ >= expr_.size()) fail(seg_start, "empty step");
      if (terminal_seen) fail(seg_start, "no step may follow a terminal selector");
      if (try_consume("string()")) {
        path.string_value = true;
        terminal_seen = true;
      } else {
        PathStep step = compile_step(seg_start);
        terminal_seen = step.kind != StepKind::Child;
        path.steps.push_back(std::move(step));
      }
      if (pos_ >= expr_.size()) break;
      if (peek() != '/') fail(pos_ + 1, "expected '/'");
      ++pos_;
    }
    if (path.steps.empty() && !path.string_value) fail(1, "empty path");
    return path;
  }

 private:
  [[noreturn]] void fail(std::size_t position, const std::string& reason) const {
    throw PathSyntaxError(position, reason);
  }

  char peek() const { return pos_ < expr_.size() ? expr_[pos_] : '\0'; }

  bool try_consume(std::string_view s) {
    if (expr_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  std::string read_name(std::size_t seg_start) {
    if (pos_ >= expr_.size() || !is_name_start(static_cast<unsigned char>(expr_[pos_]))) {
      fail(pos_ + 1, "expected a name");
    }
    std::string name;
    name += expr_[pos_++];
    while (pos_ < expr_.size() && is_name_char(static_cast<unsigned char>(expr_[pos_]))) {
      name += expr_[pos_++];
    }
    (void)seg_start;
    return name;
  }

  PathStep compile_step(std::size_t seg_start) {
    PathStep step;
    if (peek() == '@') {
      ++pos_;
      step.kind = StepKind::Attribute;
      step.name = read_name(seg_start);
      return step;
    }
    if (try_consume("text()")) {
      step.kind = StepKind::Text;
      return step;
    }
    if (peek() == '/') fail(seg_start, "descendant axis '//' is not supported");
    step.kind = StepKind::Child;
    if (peek() == '*') {
      ++pos_;
      step.name = "*";
    } else {
      step.name = read_name(seg_start);
    }
    if (peek() == '[') {
      ++pos_;
      compile_predicate(step);
    }
    return step;
  }

  void compile_predicate(PathStep& step) {
    if (peek() == '@') {
      ++pos_;
      step.pred_attr = read_name(pos_);
      if (peek() != '=') fail(pos_ + 1, "expected '=' in attribute predicate");
      ++pos_;
      if (peek() != '\'') fail(pos_ + 1, "expected single-quoted literal");
      ++pos_;
      while (pos_ < expr_.size() && expr_[pos_] != '\'') step.pred_value += expr_[pos_++];
      if (pos_ >= expr_.size()) fail(pos_ + 1, "unterminated literal");
      ++pos_;  // closing quote
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      int n = 0;
      while (pos_ < expr_.size() && std::isdigit(static_cast<unsigned char>(expr_[pos_]))) {
        n = n * 10 + (expr_[pos_++] - '0');
        if (n > 1'000'000) fail(pos_, "position out of range");
      }
      if (n < 1) fail(pos_, "positions are 1-based");
      step.position = n;
    } else {
      fail(pos_ + 1, "unsupported predicate");
    }
    if (peek() != ']') fail(pos_ + 1, "expected ']'");
    ++pos_;
  }

  std::string_view expr_;
  std::size_t pos_ = 0;
};

bool element_matches(const xml::XmlNode& n, const PathStep& step) {
  if (n.kind != xml::NodeKind::Element) return false;
  if (step.name != "*" && n.name != step.name) return false;
  if (!step.pred_attr.empty()) {
    const xml::XmlNode* a = n.attribute(step.pred_attr);
    if (a == nullptr || a->value != step.pred_value) return false;
  }
  return true;
}

void apply_step(const xml::XmlNode& context, const PathStep& step, NodeSet& out) {
  switch (step.kind) {
    case StepKind::Child: {
      int index = 0;
      for (const auto& c : context.children) {
        if (c->kind != xml::NodeKind::Element) continue;
        if (step.name != "*" && c->name != step.name) continue;
        if (!step.pred_attr.empty()) {
          const xml::XmlNode* a = c->attribute(step.pred_attr);
          if (a == nullptr || a->value != step.pred_value) continue;
        }
        ++index;  // position counts name-test matches, 1-based
        if (step.position != 0 && index != step.position) continue;
        out.push_back(c.get());
      }
      break;
    }
    case StepKind::Attribute: {
      for (const auto& a : context.attributes) {
        if (a->name == step.name) out.push_back(a.get());
      }
      break;
    }
    case StepKind::Text: {
      for (const auto& c : context.children) {
        if (c->kind == xml::NodeKind::Text) out.push_back(c.get());
      }
      break;
    }
  }
}

}  // namespace

PathExpr compile_path(std::string_view expr) {
  PathCompiler c(expr);
  return c.compile();
}

NodeSet eval_xpath(const xml::XmlNode& context, const PathExpr& path) {
  NodeSet current;
  std::size_t first_step = 0;
  if (path.absolute) {
    const xml::XmlNode& root = context.root();
    if (path.steps.empty()) {
      current.push_back(&root);
    } else {
      // The first step of an absolute path names the root element.
      const PathStep& s0 = path.steps[0];
      if (s0.kind == StepKind::Child && element_matches(root, s0) &&
          (s0.position == 0 || s0.position == 1)) {
        current.push_back(&root);
      }
      first_step = 1;
    }
  } else {
    current.push_back(&context);
  }

  for (std::size_t i = first_step; i < path.steps.size(); ++i) {
    NodeSet next;
    for (const xml::XmlNode* n : current) {
      apply_step(*n, path.steps[i], next);
    }
    current = std::move(next);
    if (current.empty()) break;
  }

  std::sort(current.begin(), current.end(),
            [](const xml::XmlNode* a, const xml::XmlNode* b) { return a->doc_order < b->doc_order; });
  current.erase(std::unique(current.begin(), current.end()), current.end());
  return current;
}

std::vector<std::string> select_values(const xml::XmlNode& context, const PathExpr& path) {
  NodeSet nodes = eval_xpath(context, path);
  std::vector<std::string> values;
  values.reserve(nodes.size());
  for (const xml::XmlNode* n : nodes) {
    values.push_back(xml::node_string(*n));
  }
  return values;
}

}  // namespace uplift::xpath
