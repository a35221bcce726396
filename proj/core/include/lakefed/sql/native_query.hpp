#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lakefed/sparql/ast.hpp"

namespace lakefed {

/// A statement in the canonical SQL dialect plus the mapping from output
/// column names to the query variables they carry.
struct SqlScan {
  std::string text;
  std::map<std::string, std::string> output_map;  // column alias -> variable

  bool operator==(const SqlScan&) const = default;
};

/// A star-pattern request against a triple store: the star's patterns with
/// prefixes already expanded, plus any filters pushed along.
struct TripleRequest {
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;

  bool operator==(const TripleRequest&) const = default;
};

struct NativeQuery {
  std::string source_id;
  std::variant<SqlScan, TripleRequest> body;

  bool is_sql() const { return body.index() == 0; }
  const SqlScan& sql() const { return std::get<SqlScan>(body); }
  const TripleRequest& triples() const { return std::get<TripleRequest>(body); }

  bool operator==(const NativeQuery&) const = default;
};

}  // namespace lakefed
