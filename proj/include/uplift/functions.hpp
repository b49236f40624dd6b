#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uplift/errors.hpp"

namespace uplift::fn {

inline constexpr std::string_view kFunctionNs = "http://uplift.example/fn/";

using Transform = std::function<std::string(const std::vector<std::string>&)>;

// Registry of pure string transformations, keyed by function IRI. The
// built-ins (trim, normalizeSpace, lowercase, uppercase, concat,
// substringAfter) are always present; registering an existing IRI replaces
// it. Read-only during mapping execution.
class FunctionRegistry {
 public:
  FunctionRegistry();

  // max_arity < 0 means unbounded.
  void register_function(const std::string& iri, Transform fn, int min_arity = 0, int max_arity = -1);

  // throws UnknownFunctionError / ArityMismatchError
  std::string apply(const std::string& iri, const std::vector<std::string>& args) const;

  bool contains(const std::string& iri) const { return entries_.contains(iri); }

 private:
  struct Entry {
    Transform fn;
    int min_arity;
    int max_arity;
  };
  std::unordered_map<std::string, Entry> entries_;
};

// Free-function spellings used throughout the tests.
inline void register_function(FunctionRegistry& registry, const std::string& iri, Transform fn,
                              int min_arity = 0, int max_arity = -1) {
  registry.register_function(iri, std::move(fn), min_arity, max_arity);
}

inline std::string apply_function(const FunctionRegistry& registry, const std::string& iri,
                                  const std::vector<std::string>& args) {
  return registry.apply(iri, args);
}

}  // namespace uplift::fn
