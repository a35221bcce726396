#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lakefed/value.hpp"

namespace lakefed {

/// IRI of the rdf:type predicate, written `a` in queries.
inline const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// IRI of the xsd:integer datatype; integer literals carry it implicitly.
inline const std::string kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

enum class TermKind { IRI, Literal, Variable };

/// One component of a triple pattern: an IRI, a literal, or a variable.
struct Term {
  TermKind kind = TermKind::Variable;
  std::string value;
  /// Datatype IRI, literals only.
  std::optional<std::string> datatype;

  bool operator==(const Term&) const = default;

  static Term iri(std::string v) { return Term{TermKind::IRI, std::move(v), std::nullopt}; }
  static Term variable(std::string v) {
    return Term{TermKind::Variable, std::move(v), std::nullopt};
  }
  static Term literal(std::string v, std::optional<std::string> dt = std::nullopt) {
    return Term{TermKind::Literal, std::move(v), std::move(dt)};
  }
  static Term int_literal(int64_t v) {
    return Term{TermKind::Literal, std::to_string(v), kXsdInteger};
  }

  bool is_variable() const { return kind == TermKind::Variable; }
  bool is_iri() const { return kind == TermKind::IRI; }
  bool is_literal() const { return kind == TermKind::Literal; }

  /// Runtime value of a constant term: integer-typed literals become INT,
  /// every other literal and IRIs become TEXT.
  Value to_value() const;
};

struct TriplePattern {
  Term subject;    // Variable or IRI
  Term predicate;  // IRI only (subset restriction)
  Term object;

  bool operator==(const TriplePattern&) const = default;
};

/// A conjunctive filter of the form `?var op constant`.
struct FilterExpr {
  std::string variable;  // without '?'
  FilterOp op = FilterOp::EQ;
  Term constant;  // Literal

  bool operator==(const FilterExpr&) const = default;

  Value constant_value() const { return constant.to_value(); }
};

struct Query {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> projection;  // variable names without '?'
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  bool distinct = false;

  bool operator==(const Query&) const = default;
};

/// Renders a query as parseable text. parse_query(serialize_query(q)) == q.
std::string serialize_query(const Query& q);

std::string term_to_string(const Term& t);

}  // namespace lakefed
