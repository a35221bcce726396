#pragma once

#include "lakefed/sparql/ast.hpp"

namespace lakefed {

/// A query that passed validate_query. Construction is restricted so that
/// later stages can rely on the checks having run.
class ValidatedQuery {
 public:
  const Query& query() const { return query_; }
  const Query* operator->() const { return &query_; }

 private:
  friend ValidatedQuery validate_query(const Query& q);
  explicit ValidatedQuery(Query q) : query_(std::move(q)) {}
  Query query_;
};

/// Checks projection coverage, filter-variable boundedness, and connectivity
/// of the pattern graph via shared variables. Queries containing a cartesian
/// product are rejected.
///
/// Throws UnboundProjection, UnboundFilterVariable, or DisconnectedPattern.
ValidatedQuery validate_query(const Query& q);

}  // namespace lakefed
