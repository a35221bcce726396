#pragma once

#include <string>
#include <vector>

#include "lakefed/value.hpp"

namespace lakefed {

/// Parsed form of the canonical SQL dialect:
///
///   SELECT [DISTINCT] alias.col AS name, ...
///   FROM table alias
///   [INNER JOIN table alias ON alias.col = alias.col]...
///   [WHERE cond [AND cond]...]
///
/// where cond is `alias.col op literal`, `alias.col = alias.col`, or
/// `CONTAINS(alias.col, 'text')`, and op is = <> < > <= >=.
struct QualifiedColumn {
  std::string alias;
  std::string column;

  bool operator==(const QualifiedColumn&) const = default;
};

struct SelectItem {
  QualifiedColumn column;
  std::string name;  // output column name
};

struct TableRef {
  std::string table;
  std::string alias;
};

struct JoinClause {
  TableRef table;
  QualifiedColumn left;   // references an earlier table
  QualifiedColumn right;  // references the joined table
};

struct SqlCondition {
  enum class Kind { Compare, ColumnEq, Contains };
  Kind kind = Kind::Compare;
  QualifiedColumn column;
  FilterOp op = FilterOp::EQ;  // Compare only
  Value literal;               // Compare / Contains
  QualifiedColumn other;       // ColumnEq only
};

struct SqlStatement {
  bool distinct = false;
  std::vector<SelectItem> select;
  TableRef from;
  std::vector<JoinClause> joins;
  std::vector<SqlCondition> where;
};

/// Canonical single-line serialization; the translator emits exactly this.
std::string sql_to_string(const SqlStatement& s);

/// Parses dialect text. Throws DialectError.
SqlStatement parse_sql(const std::string& text);

}  // namespace lakefed
