#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uplift/errors.hpp"

namespace uplift {

// A template string split into literal runs and {placeholder} expressions.
// Backslash escapes \{ \} \\ produce literal characters.
struct TemplatePart {
  bool placeholder = false;
  std::string text;  // literal text, or the placeholder's path expression

  friend bool operator==(const TemplatePart&, const TemplatePart&) = default;
};

struct TemplateParts {
  std::vector<TemplatePart> parts;

  std::size_t placeholders() const {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.placeholder ? 1 : 0;
    return n;
  }
};

inline TemplateParts parse_template(std::string_view text) {
  TemplateParts out;
  std::string current;
  bool in_placeholder = false;
  auto flush_literal = [&] {
    if (!current.empty()) {
      out.parts.push_back(TemplatePart{false, current});
      current.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\') {
      if (i + 1 >= text.size()) throw Error("template ends with a dangling backslash");
      char next = text[i + 1];
      if (next != '{' && next != '}' && next != '\\') {
        throw Error(std::string("unknown template escape \\") + next);
      }
      current += next;
      ++i;
      continue;
    }
    if (c == '{') {
      if (in_placeholder) throw Error("nested '{' in template placeholder");
      flush_literal();
      in_placeholder = true;
      continue;
    }
    if (c == '}') {
      if (!in_placeholder) throw Error("unmatched '}' in template");
      if (current.empty()) throw Error("empty template placeholder");
      out.parts.push_back(TemplatePart{true, current});
      current.clear();
      in_placeholder = false;
      continue;
    }
    current += c;
  }
  if (in_placeholder) throw Error("unclosed '{' in template");
  flush_literal();
  return out;
}

}  // namespace uplift
