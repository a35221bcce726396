#pragma once

#include <stdexcept>
#include <string>

namespace lakefed {

/// Base class for all errors raised by the query engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- parser / validation ---

class SyntaxError : public Error {
 public:
  SyntaxError(size_t position, const std::string& expected, const std::string& got)
      : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected +
              ", got '" + got + "'"),
        position(position),
        expected(expected) {}
  size_t position;
  std::string expected;
};

class UnknownPrefix : public Error {
 public:
  explicit UnknownPrefix(const std::string& prefix)
      : Error("unknown prefix '" + prefix + "'"), prefix(prefix) {}
  std::string prefix;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string& feature)
      : Error("unsupported feature: " + feature), feature(feature) {}
  std::string feature;
};

class UnboundProjection : public Error {
 public:
  explicit UnboundProjection(const std::string& var)
      : Error("projected variable ?" + var + " does not occur in any pattern"), variable(var) {}
  std::string variable;
};

class UnboundFilterVariable : public Error {
 public:
  explicit UnboundFilterVariable(const std::string& var)
      : Error("filter variable ?" + var + " does not occur in any pattern"), variable(var) {}
  std::string variable;
};

class DisconnectedPattern : public Error {
 public:
  explicit DisconnectedPattern(const std::string& detail)
      : Error("pattern graph is not connected (cartesian product): " + detail) {}
};

// --- catalog ---

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& detail) : Error("parse error: " + detail) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& detail)
      : Error("catalog invariant violated: " + detail) {}
};

class DanglingReference : public Error {
 public:
  explicit DanglingReference(const std::string& detail)
      : Error("dangling reference: " + detail) {}
};

class UnknownColumn : public Error {
 public:
  UnknownColumn(const std::string& table, const std::string& column)
      : Error("unknown column " + table + "." + column), table(table), column(column) {}
  std::string table;
  std::string column;
};

class UnknownMapping : public Error {
 public:
  explicit UnknownMapping(const std::string& detail) : Error("unknown mapping: " + detail) {}
};

// --- decomposition / planning ---

class NoSourceForSubquery : public Error {
 public:
  NoSourceForSubquery(const std::string& subject, const std::string& predicate)
      : Error("no source answers the sub-query rooted at " + subject +
              " (unmatched predicate " + predicate + ")"),
        subject(subject),
        predicate(predicate) {}
  std::string subject;
  std::string predicate;
};

class DisconnectedPlan : public Error {
 public:
  explicit DisconnectedPlan(const std::string& detail)
      : Error("plan units not connected: " + detail) {}
};

// --- translation ---

class UnmappedPredicate : public Error {
 public:
  UnmappedPredicate(const std::string& predicate, const std::string& class_iri)
      : Error("predicate " + predicate + " has no relational mapping for class " + class_iri),
        predicate(predicate) {}
  std::string predicate;
};

class TableCapExceeded : public Error {
 public:
  explicit TableCapExceeded(size_t count)
      : Error("translated statement references " + std::to_string(count) +
              " tables, exceeding the cap of 6"),
        count(count) {}
  size_t count;
};

// --- backends ---

class DialectError : public Error {
 public:
  explicit DialectError(const std::string& detail) : Error("sql dialect error: " + detail) {}
};

class UnknownRelation : public Error {
 public:
  explicit UnknownRelation(const std::string& table)
      : Error("unknown relation '" + table + "'"), table(table) {}
  std::string table;
};

// --- engine ---

class TypeMismatch : public Error {
 public:
  explicit TypeMismatch(const std::string& detail) : Error("type mismatch: " + detail) {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& var)
      : Error("unknown variable ?" + var), variable(var) {}
  std::string variable;
};

class SourceUnavailable : public Error {
 public:
  explicit SourceUnavailable(const std::string& source_id)
      : Error("source '" + source_id + "' is not loaded"), source_id(source_id) {}
  std::string source_id;
};

// --- bench harness ---

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

class MalformedTrace : public Error {
 public:
  explicit MalformedTrace(const std::string& detail) : Error("malformed trace: " + detail) {}
};

class MissingCell : public Error {
 public:
  explicit MissingCell(const std::string& detail) : Error("missing cell: " + detail) {}
};

}  // namespace lakefed
