#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uplift/functions.hpp"
#include "uplift/mapping.hpp"
#include "uplift/rdf.hpp"
#include "uplift/xml.hpp"

namespace uplift::engine {

// Current evaluation position: the document root plus the node selected by
// the logical-source iterator.
struct BindingContext {
  const xml::XmlNode* document = nullptr;
  const xml::XmlNode* iterator_node = nullptr;
};

struct EngineConfig {
  bool strict = false;        // abort on term-generation errors instead of skipping
  bool emit_warnings = true;  // record skipped-term warnings in lenient mode
  unsigned workers = 0;       // worker threads; 0 = pick from hardware
};

struct InputDocument {
  const xml::XmlNode* root = nullptr;
  std::string name;  // identifies the document in warnings and errors
};

struct Warning {
  std::string document;
  std::string triples_map;
  std::string message;
};

struct ExecutionResult {
  rdf::Graph graph;
  std::vector<Warning> warnings;  // ordered by document, then by occurrence
};

// Runs every triples map of `mapping` over every document and unions the
// results. Documents are processed by a worker pool; output is independent
// of the worker count. In strict mode the first term-generation error aborts
// with MappingExecutionError; in lenient mode the offending term is skipped
// and a warning recorded.
ExecutionResult execute_mapping(const rml::MappingDocument& mapping,
                                std::span<const InputDocument> documents,
                                const fn::FunctionRegistry& registry, const EngineConfig& config = {});

// Evaluates one term map in one context. Constant maps yield their constant;
// reference maps yield one term per selected value; template maps yield one
// term per combination of placeholder values; function maps apply the
// registered function per combination of parameter values. The term type is
// applied last (IRI values are validated). Missing values yield fewer terms,
// not errors. Throws InvalidIriError / UnknownFunctionError /
// ArityMismatchError on genuinely bad values.
std::vector<rdf::RdfTerm> generate_terms(const rml::TermMap& term_map, const BindingContext& ctx,
                                         const fn::FunctionRegistry& registry);

// Substitutes placeholder values into a template, percent-encoding each value
// (unreserved characters A-Z a-z 0-9 - . _ ~ kept, every other byte of the
// UTF-8 encoding escaped as %XX). Returns nullopt when any placeholder has no
// entry in `values`.
std::optional<std::string> expand_template(std::string_view template_text,
                                           const std::unordered_map<std::string, std::string>& values);

std::string iri_safe_encode(std::string_view value);

}  // namespace uplift::engine
