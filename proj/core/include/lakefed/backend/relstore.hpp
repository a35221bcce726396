#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lakefed/backend/stream.hpp"
#include "lakefed/catalog.hpp"
#include "lakefed/sql/statement.hpp"

namespace lakefed {

/// Counters a query execution updates; tests use them to assert streaming
/// behavior (e.g. a selective lookup must not touch the whole table).
struct ExecStats {
  std::atomic<uint64_t> rows_scanned{0};  // rows visited by full scans
  std::atomic<uint64_t> index_lookups{0};
  std::atomic<uint64_t> rows_emitted{0};
};

/// In-memory relational source: typed tables, ordered secondary indexes, and
/// an executor for the canonical SQL dialect. Immutable once loading and
/// index creation are done; concurrent queries may then run freely.
class RelSource {
 public:
  struct Table {
    std::vector<std::string> columns;
    std::vector<ColumnType> types;
    std::vector<std::vector<Value>> rows;

    size_t column_index(const std::string& name) const;  // throws UnknownColumn
  };

  /// Ordered multimap value -> row ids; serves equality and range probes.
  using Index = std::map<Value, std::vector<size_t>>;

  /// Loads every table of `source_id` from `dir` (one CSV per table, header
  /// row = column names), taking schema, primary keys, and index choices from
  /// the catalog statistics.
  static RelSource load(const Catalog& catalog, const std::string& source_id,
                        const std::string& dir);

  void add_table(const std::string& name, Table table);
  void set_primary_key(const std::string& table, const std::string& column);

  /// Builds an ordered index; idempotent. Throws UnknownColumn.
  void create_index(const std::string& table, const std::string& column);
  bool has_index(const std::string& table, const std::string& column) const;

  const Table& table(const std::string& name) const;  // throws UnknownRelation
  bool has_table(const std::string& name) const;
  const Index* index(const std::string& table, const std::string& column) const;

  /// Verifies that every index mirrors its table exactly (test hook).
  void audit_indexes() const;

  /// Executes a dialect statement, streaming results. Bag semantics, set when
  /// DISTINCT. When `explain` is given, the chosen access path per operator
  /// is appended to it as a JSON array string once the plan is formed.
  TupleStreamPtr execute_sql(const std::string& sql, ExecStats* stats = nullptr,
                             std::string* explain = nullptr) const;
  TupleStreamPtr execute_sql(const SqlStatement& stmt, ExecStats* stats = nullptr,
                             std::string* explain = nullptr) const;

 private:
  std::map<std::string, Table> tables_;
  std::map<std::pair<std::string, std::string>, Index> indexes_;
  std::map<std::string, std::string> primary_keys_;
};

}  // namespace lakefed
