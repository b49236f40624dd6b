#include "uplift/functions.hpp"

#include <cctype>

namespace uplift::fn {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string normalize_space(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

std::string full_iri(std::string_view local) {
  return std::string(kFunctionNs) + std::string(local);
}

}  // namespace

FunctionRegistry::FunctionRegistry() {
  register_function(full_iri("trim"), [](const std::vector<std::string>& a) { return trim(a[0]); }, 1, 1);
  register_function(full_iri("normalizeSpace"),
                    [](const std::vector<std::string>& a) { return normalize_space(a[0]); }, 1, 1);
  register_function(full_iri("lowercase"),
                    [](const std::vector<std::string>& a) {
                      std::string s = a[0];
                      for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                      return s;
                    },
                    1, 1);
  register_function(full_iri("uppercase"),
                    [](const std::vector<std::string>& a) {
                      std::string s = a[0];
                      for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                      return s;
                    },
                    1, 1);
  register_function(full_iri("concat"),
                    [](const std::vector<std::string>& a) {
                      std::string out;
                      for (const auto& s : a) out += s;
                      return out;
                    },
                    0, -1);
  register_function(full_iri("substringAfter"),
                    [](const std::vector<std::string>& a) {
                      auto pos = a[0].find(a[1]);
                      if (pos == std::string::npos) return std::string();
                      return a[0].substr(pos + a[1].size());
                    },
                    2, 2);
}

void FunctionRegistry::register_function(const std::string& iri, Transform fn, int min_arity, int max_arity) {
  entries_[iri] = Entry{std::move(fn), min_arity, max_arity};
}

std::string FunctionRegistry::apply(const std::string& iri, const std::vector<std::string>& args) const {
  auto it = entries_.find(iri);
  if (it == entries_.end()) throw UnknownFunctionError(iri);
  const Entry& e = it->second;
  int n = static_cast<int>(args.size());
  if (n < e.min_arity || (e.max_arity >= 0 && n > e.max_arity)) {
    throw ArityMismatchError("function " + iri + " called with " + std::to_string(n) + " arguments");
  }
  return e.fn(args);
}

}  // namespace uplift::fn
