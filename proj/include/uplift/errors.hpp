#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uplift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by make_iri and by IRI-typed term generation.
class InvalidIriError : public Error {
 public:
  InvalidIriError(std::size_t position, const std::string& reason)
      : Error("invalid IRI at position " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;  // 1-based byte offset of the offending character
  std::string reason_;
};

class ConflictingQualifiersError : public Error {
 public:
  ConflictingQualifiersError() : Error("literal cannot carry both a datatype and a language tag") {}
};

class TripleConstraintError : public Error {
 public:
  using Error::Error;
};

class NtriplesSyntaxError : public Error {
 public:
  NtriplesSyntaxError(std::size_t line, const std::string& reason)
      : Error("N-Triples syntax error on line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MalformedXmlError : public Error {
 public:
  MalformedXmlError(std::size_t line, std::size_t column, const std::string& reason)
      : Error("malformed XML at " + std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class PathSyntaxError : public Error {
 public:
  PathSyntaxError(std::size_t position, const std::string& reason)
      : Error("path syntax error at position " + std::to_string(position) + ": " + reason),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;  // 1-based offset into the expression
};

class TurtleSyntaxError : public Error {
 public:
  TurtleSyntaxError(std::size_t line, const std::string& reason)
      : Error("Turtle syntax error on line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownVocabularyTermError : public Error {
 public:
  explicit UnknownVocabularyTermError(const std::string& term)
      : Error("unknown vocabulary term: " + term), term_(term) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

class StructuralError : public Error {
 public:
  using Error::Error;
};

class UnknownFunctionError : public Error {
 public:
  explicit UnknownFunctionError(const std::string& iri) : Error("unknown function: " + iri) {}
};

class ArityMismatchError : public Error {
 public:
  using Error::Error;
};

// Strict-mode execution failure, with the triples map and document it happened in.
class MappingExecutionError : public Error {
 public:
  MappingExecutionError(const std::string& triples_map, const std::string& document, const std::string& reason)
      : Error("triples map " + triples_map + ", document " + document + ": " + reason),
        triples_map_(triples_map),
        document_(document) {}

  const std::string& triples_map() const noexcept { return triples_map_; }
  const std::string& document() const noexcept { return document_; }

 private:
  std::string triples_map_;
  std::string document_;
};

class SchemaViolationError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class TooFewSamplesError : public Error {
 public:
  using Error::Error;
};

class DegenerateVarianceError : public Error {
 public:
  using Error::Error;
};

}  // namespace uplift
