#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "uplift/errors.hpp"

namespace uplift::rdf {

enum class TermKind { Iri, BlankNode, Literal };

// An RDF term. For literals, `value` is the lexical form and at most one of
// datatype/language is set (empty string means absent).
struct RdfTerm {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;
  std::string language;

  friend bool operator==(const RdfTerm&, const RdfTerm&) = default;
};

struct IriViolation {
  std::size_t position;  // 1-based
  std::string reason;
};

// Returns the first violation of the IRI rules, or nullopt if `text` is a
// valid absolute IRI (scheme present, no forbidden characters).
std::optional<IriViolation> find_iri_violation(std::string_view text);

RdfTerm make_iri(const std::string& text);  // throws InvalidIriError

RdfTerm make_literal(const std::string& lexical,
                     const std::optional<std::string>& datatype = std::nullopt,
                     const std::optional<std::string>& language = std::nullopt);

RdfTerm make_blank_node(const std::string& label);  // throws TripleConstraintError on bad label

bool is_valid_blank_label(std::string_view label);

struct Triple {
  RdfTerm subject;
  RdfTerm predicate;
  RdfTerm object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Validates the positional constraints: subject is IRI or blank node,
// predicate is an IRI.
Triple make_triple(RdfTerm subject, RdfTerm predicate, RdfTerm object);

struct TermHash {
  std::size_t operator()(const RdfTerm& t) const noexcept;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

// A duplicate-free triple set. Insertion order is irrelevant; canonical
// serialization sorts lines bytewise.
class Graph {
 public:
  using Storage = std::unordered_set<Triple, TripleHash>;
  using const_iterator = Storage::const_iterator;

  bool insert(Triple t);  // false if already present
  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  void merge(Graph&& other);

  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

 private:
  Storage triples_;
};

// N-Triples rendering of one term (<iri>, _:label, or quoted literal).
std::string to_ntriples(const RdfTerm& term);

// Canonical N-Triples: one line per triple, lines sorted bytewise.
std::string serialize_ntriples(const Graph& g);

Graph parse_ntriples(std::string_view text);  // throws NtriplesSyntaxError

// Set equality, insensitive to blank node labels (bijection search when both
// sides contain blank nodes).
bool graph_equal(const Graph& a, const Graph& b);

}  // namespace uplift::rdf
