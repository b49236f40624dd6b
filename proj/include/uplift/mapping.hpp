#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "uplift/errors.hpp"
#include "uplift/rdf.hpp"

namespace uplift::rml {

// RML vocabulary (the subset this engine executes).
namespace vocab {
inline const std::string rml_ns = "http://semweb.mmlab.be/ns/rml#";
inline const std::string rr_ns = "http://www.w3.org/ns/r2rml#";
inline const std::string ql_ns = "http://semweb.mmlab.be/ns/ql#";
inline const std::string rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline const std::string ql_xpath = ql_ns + "XPath";
}  // namespace vocab

// --- Turtle subset ---------------------------------------------------------
//
// Accepted: @prefix directives, prefixed names, full IRIs, the `a` keyword,
// string literals (short and """long""" form, with datatype/language),
// blank-node property lists, `;` predicate lists, `,` object lists.
// Statement order is preserved; nested property lists receive generated
// blank labels.
namespace turtle {

struct Statement {
  rdf::RdfTerm subject;
  rdf::RdfTerm predicate;
  rdf::RdfTerm object;
};

struct TurtleDocument {
  std::vector<std::pair<std::string, std::string>> prefixes;  // label -> namespace, in order
  std::vector<Statement> statements;                          // document order
};

TurtleDocument parse_turtle(std::string_view text);  // throws TurtleSyntaxError

}  // namespace turtle

// --- Mapping model ---------------------------------------------------------

struct LogicalSource {
  std::string source;
  std::string iterator;               // XPath text; compiled by the engine
  std::string reference_formulation;  // always "XPath"

  friend bool operator==(const LogicalSource&, const LogicalSource&) = default;
};

enum class TermMapKind { Constant, Reference, Template, Function };
enum class TermType { Iri, BlankNode, Literal };

struct FunctionCall;

// Exactly one of constant/reference/template_text/function_call is populated,
// matching `kind`. term_type defaults are resolved at parse time: IRI for
// subject and predicate maps, Literal for reference- and function-valued
// object maps, IRI for template-valued object maps.
struct TermMap {
  TermMapKind kind = TermMapKind::Constant;
  rdf::RdfTerm constant;
  std::string reference;      // XPath text
  std::string template_text;  // "{ref}" placeholders
  std::shared_ptr<FunctionCall> function_call;
  TermType term_type = TermType::Iri;
  std::string datatype;  // Literal only
  std::string language;  // Literal only

  friend bool operator==(const TermMap& a, const TermMap& b);
};

struct FunctionCall {
  std::string function_iri;
  std::vector<TermMap> parameters;  // evaluated and passed as strings, in order

  friend bool operator==(const FunctionCall&, const FunctionCall&) = default;
};

struct JoinCondition {
  std::string child;   // XPath relative to the child iterator context
  std::string parent;  // XPath relative to the parent iterator context

  friend bool operator==(const JoinCondition&, const JoinCondition&) = default;
};

struct RefObjectMap {
  std::string parent_triples_map;
  std::vector<JoinCondition> join_conditions;

  friend bool operator==(const RefObjectMap&, const RefObjectMap&) = default;
};

using ObjectMap = std::variant<TermMap, RefObjectMap>;

struct PredicateObjectMap {
  std::vector<TermMap> predicate_maps;
  std::vector<ObjectMap> object_maps;

  friend bool operator==(const PredicateObjectMap&, const PredicateObjectMap&) = default;
};

struct TriplesMap {
  std::string id;  // absolute IRI or blank label
  LogicalSource logical_source;
  TermMap subject_map;
  std::vector<std::string> subject_classes;  // rdf:type IRIs emitted per subject
  std::vector<PredicateObjectMap> predicate_object_maps;

  friend bool operator==(const TriplesMap&, const TriplesMap&) = default;
};

struct MappingDocument {
  std::vector<std::pair<std::string, std::string>> prefixes;
  std::vector<TriplesMap> triples_maps;

  const TriplesMap* find_triples_map(std::string_view id) const;

  friend bool operator==(const MappingDocument&, const MappingDocument&) = default;
};

// Parses the Turtle subset and resolves the RML vocabulary into a
// MappingDocument. Shape violations (missing subject map, conflicting value
// forms, ...) raise StructuralError; unsupported rr:/rml: properties raise
// UnknownVocabularyTermError.
MappingDocument parse_mapping(std::string_view turtle_text);

// Diagnostics are returned, not thrown: path/template compilability, parent
// map resolution, join/source consistency, datatype and language shape.
// Empty result means the document is executable.
std::vector<std::string> validate_mapping(const MappingDocument& doc);

// Writes the document back in the accepted Turtle subset. Re-parsing the
// output yields a structurally equal document.
std::string serialize_mapping(const MappingDocument& doc);

}  // namespace uplift::rml
