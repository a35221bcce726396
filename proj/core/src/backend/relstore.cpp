#include "lakefed/backend/relstore.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lakefed/error.hpp"
#include "lakefed/util/csv.hpp"

namespace lakefed {

size_t RelSource::Table::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw UnknownColumn("?", name);
}

RelSource RelSource::load(const Catalog& catalog, const std::string& source_id,
                          const std::string& dir) {
  RelSource src;
  // The statistics entries double as the schema: they enumerate every column.
  std::map<std::string, std::vector<const ColumnStats*>> by_table;
  for (const auto& s : catalog.statistics) {
    if (s.source_id == source_id) by_table[s.table].push_back(&s);
  }
  for (const auto& [table_name, cols] : by_table) {
    const std::string path = (std::filesystem::path(dir) / (table_name + ".csv")).string();
    CsvTable csv = read_csv(path);
    Table table;
    table.columns = csv.header;
    table.types.reserve(csv.header.size());
    for (const auto& col : csv.header) {
      const ColumnStats* stats = nullptr;
      for (const auto* s : cols) {
        if (s->column == col) {
          stats = s;
          break;
        }
      }
      if (!stats) {
        throw DanglingReference("CSV column " + table_name + "." + col +
                                " has no catalog statistics");
      }
      table.types.push_back(stats->type);
    }
    table.rows.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
      std::vector<Value> values;
      values.reserve(row.size());
      for (size_t i = 0; i < row.size(); ++i) {
        if (table.types[i] == ColumnType::INT) {
          try {
            values.emplace_back(static_cast<int64_t>(std::stoll(row[i])));
          } catch (const std::exception&) {
            throw ParseError(path + ": '" + row[i] + "' is not an integer (column " +
                             table.columns[i] + ")");
          }
        } else {
          values.emplace_back(row[i]);
        }
      }
      table.rows.push_back(std::move(values));
    }
    src.add_table(table_name, std::move(table));
    for (const auto* s : cols) {
      if (s->is_primary_key) src.set_primary_key(table_name, s->column);
      if (s->indexed || s->is_primary_key) src.create_index(table_name, s->column);
    }
  }
  return src;
}

void RelSource::add_table(const std::string& name, Table table) {
  tables_[name] = std::move(table);
}

void RelSource::set_primary_key(const std::string& table_name, const std::string& column) {
  const Table& t = table(table_name);
  const size_t idx = t.column_index(column);
  std::set<std::string> seen;
  for (const auto& row : t.rows) {
    if (!seen.insert(value_to_string(row[idx]) + (is_int(row[idx]) ? "#i" : "#t")).second) {
      throw InvariantViolation("primary key " + table_name + "." + column +
                               " contains duplicate value " + value_to_string(row[idx]));
    }
  }
  primary_keys_[table_name] = column;
}

void RelSource::create_index(const std::string& table_name, const std::string& column) {
  const Table& t = table(table_name);
  const size_t idx = t.column_index(column);
  auto key = std::make_pair(table_name, column);
  if (indexes_.count(key)) return;  // idempotent
  Index index;
  for (size_t row = 0; row < t.rows.size(); ++row) {
    index[t.rows[row][idx]].push_back(row);
  }
  indexes_.emplace(std::move(key), std::move(index));
}

bool RelSource::has_index(const std::string& table, const std::string& column) const {
  return indexes_.count({table, column}) > 0;
}

const RelSource::Table& RelSource::table(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw UnknownRelation(name);
  return it->second;
}

bool RelSource::has_table(const std::string& name) const { return tables_.count(name) > 0; }

const RelSource::Index* RelSource::index(const std::string& table,
                                         const std::string& column) const {
  auto it = indexes_.find({table, column});
  return it == indexes_.end() ? nullptr : &it->second;
}

void RelSource::audit_indexes() const {
  for (const auto& [key, index] : indexes_) {
    const Table& t = table(key.first);
    const size_t col = t.column_index(key.second);
    size_t indexed_rows = 0;
    for (const auto& [value, rows] : index) {
      for (size_t row : rows) {
        if (row >= t.rows.size() || !(t.rows[row][col] == value)) {
          throw InvariantViolation("index " + key.first + "." + key.second +
                                   " does not mirror its table");
        }
      }
      indexed_rows += rows.size();
    }
    if (indexed_rows != t.rows.size()) {
      throw InvariantViolation("index " + key.first + "." + key.second + " covers " +
                               std::to_string(indexed_rows) + " of " +
                               std::to_string(t.rows.size()) + " rows");
    }
  }
}

namespace {

std::string value_key(const Value& v) {
  return (is_int(v) ? "i:" : "t:") + value_to_string(v);
}

/// Access path of the base table scan.
struct BaseAccess {
  enum class Kind { FullScan, IndexEq, IndexRange };
  Kind kind = Kind::FullScan;
  const RelSource::Index* index = nullptr;
  size_t condition = 0;  // index into stage-0 conditions, for Eq/Range
  std::string column;
};

struct JoinStage {
  const RelSource::Table* table = nullptr;
  std::string table_name;
  std::string alias;
  size_t left_stage = 0;  // stage whose row provides the probe value
  size_t left_col = 0;
  size_t right_col = 0;
  const RelSource::Index* index = nullptr;  // index-nested-loop when set
  std::string right_column_name;
};

struct BoundCondition {
  SqlCondition cond;
  size_t stage;                 // earliest stage where all aliases are bound
  size_t col_stage, col_idx;    // resolved position of cond.column
  size_t other_stage, other_idx;  // resolved position of cond.other (ColumnEq)
};

/// Streaming cursor over the join pipeline: one nested cursor per stage,
/// advanced depth-first with backtracking.
class SqlCursor final : public TupleStream {
 public:
  SqlCursor(const RelSource& src, SqlStatement stmt, ExecStats* stats, std::string* explain)
      : src_(src), stmt_(std::move(stmt)), stats_(stats) {
    compile();
    if (explain) *explain = explain_json();
    current_rows_.assign(1 + joins_.size(), nullptr);
    cursors_.resize(1 + joins_.size());
  }

  std::optional<Binding> next() override {
    while (true) {
      if (done_) return std::nullopt;
      if (!advance()) {
        done_ = true;
        return std::nullopt;
      }
      Binding out;
      for (const auto& item : select_) {
        out[item.name] = (*current_rows_[item.stage])[item.col];
      }
      if (stmt_.distinct) {
        std::string key;
        for (const auto& [name, value] : out) key += value_key(value) + "\x1f";
        if (!distinct_seen_.insert(std::move(key)).second) continue;
      }
      if (stats_) stats_->rows_emitted.fetch_add(1, std::memory_order_relaxed);
      return out;
    }
  }

 private:
  struct ResolvedSelect {
    std::string name;
    size_t stage, col;
  };

  struct Cursor {
    // Candidate row ids for this stage given the outer rows, and the position
    // within them. Full scans iterate the table directly.
    const std::vector<size_t>* matches = nullptr;
    std::vector<size_t> owned_matches;
    size_t pos = 0;
    bool full_scan = false;
    size_t scan_pos = 0;
    bool open = false;
  };

  void compile() {
    // Alias table: stage 0 is FROM, stage i is the i-th join.
    aliases_[stmt_.from.alias] = 0;
    base_table_ = &src_.table(stmt_.from.table);
    size_t stage = 1;
    for (const auto& j : stmt_.joins) {
      if (aliases_.count(j.table.alias)) {
        throw DialectError("duplicate alias " + j.table.alias);
      }
      aliases_[j.table.alias] = stage++;
      // existence check up front
      src_.table(j.table.table);
    }

    auto resolve = [&](const QualifiedColumn& qc) -> std::pair<size_t, size_t> {
      auto it = aliases_.find(qc.alias);
      if (it == aliases_.end()) throw DialectError("unknown alias " + qc.alias);
      const RelSource::Table& t =
          it->second == 0 ? *base_table_ : src_.table(stmt_.joins[it->second - 1].table.table);
      return {it->second, t.column_index(qc.column)};
    };

    for (const auto& item : stmt_.select) {
      auto [stage_idx, col] = resolve(item.column);
      select_.push_back({item.name, stage_idx, col});
    }

    joins_.reserve(stmt_.joins.size());
    for (size_t i = 0; i < stmt_.joins.size(); ++i) {
      const JoinClause& j = stmt_.joins[i];
      JoinStage js;
      js.table_name = j.table.table;
      js.table = &src_.table(j.table.table);
      js.alias = j.table.alias;
      auto [lstage, lcol] = resolve(j.left);
      auto [rstage, rcol] = resolve(j.right);
      if (rstage != i + 1) {
        // Allow the ON columns in either order.
        std::swap(lstage, rstage);
        std::swap(lcol, rcol);
      }
      if (rstage != i + 1 || lstage >= i + 1) {
        throw DialectError("join " + j.table.alias +
                           " must connect the joined table to an earlier one");
      }
      js.left_stage = lstage;
      js.left_col = lcol;
      js.right_col = rcol;
      js.right_column_name = js.table->columns[rcol];
      js.index = src_.index(js.table_name, js.right_column_name);
      joins_.push_back(std::move(js));
    }

    for (const auto& c : stmt_.where) {
      BoundCondition bc;
      bc.cond = c;
      auto [cs, ci] = resolve(c.column);
      bc.col_stage = cs;
      bc.col_idx = ci;
      bc.stage = cs;
      if (c.kind == SqlCondition::Kind::ColumnEq) {
        auto [os, oi] = resolve(c.other);
        bc.other_stage = os;
        bc.other_idx = oi;
        bc.stage = std::max(bc.stage, os);
      }
      conditions_.push_back(bc);
    }

    // Base access path: first equality on an indexed column wins, then the
    // first range predicate on an indexed column; otherwise a full scan.
    for (size_t i = 0; i < conditions_.size(); ++i) {
      const BoundCondition& bc = conditions_[i];
      if (bc.stage != 0 || bc.cond.kind != SqlCondition::Kind::Compare) continue;
      if (bc.cond.op == FilterOp::NEQ || bc.cond.op == FilterOp::CONTAINS) continue;
      const std::string& column = base_table_->columns[bc.col_idx];
      const RelSource::Index* idx = src_.index(stmt_.from.table, column);
      if (!idx) continue;
      // Range scans need the literal to have the column's type; equality on a
      // mismatched type simply finds nothing.
      if (bc.cond.op != FilterOp::EQ && !idx->empty() &&
          idx->begin()->first.index() != bc.cond.literal.index()) {
        continue;
      }
      const bool is_eq = bc.cond.op == FilterOp::EQ;
      if (base_.kind == BaseAccess::Kind::FullScan ||
          (is_eq && base_.kind == BaseAccess::Kind::IndexRange)) {
        base_.kind = is_eq ? BaseAccess::Kind::IndexEq : BaseAccess::Kind::IndexRange;
        base_.index = idx;
        base_.condition = i;
        base_.column = column;
        if (is_eq) break;
      }
    }
  }

  std::string explain_json() const {
    std::ostringstream out;
    out << "[";
    out << "{\"op\":\"scan\",\"table\":\"" << stmt_.from.table << "\",\"access\":\"";
    switch (base_.kind) {
      case BaseAccess::Kind::FullScan: out << "full_scan"; break;
      case BaseAccess::Kind::IndexEq: out << "index_eq(" << base_.column << ")"; break;
      case BaseAccess::Kind::IndexRange: out << "index_range(" << base_.column << ")"; break;
    }
    out << "\"}";
    for (const auto& j : joins_) {
      out << ",{\"op\":\"join\",\"table\":\"" << j.table_name << "\",\"method\":\""
          << (j.index ? "index_nested_loop" : "hash") << "(" << j.right_column_name << ")\"}";
    }
    out << "]";
    return out.str();
  }

  const std::vector<size_t>* hash_probe(size_t join_idx, const Value& v) {
    auto& table_map = hash_tables_[join_idx];
    if (!table_map) {
      table_map = std::make_unique<std::unordered_map<std::string, std::vector<size_t>>>();
      const JoinStage& js = joins_[join_idx];
      for (size_t row = 0; row < js.table->rows.size(); ++row) {
        if (stats_) stats_->rows_scanned.fetch_add(1, std::memory_order_relaxed);
        (*table_map)[value_key(js.table->rows[row][js.right_col])].push_back(row);
      }
    }
    auto it = table_map->find(value_key(v));
    return it == table_map->end() ? nullptr : &it->second;
  }

  bool condition_holds(const BoundCondition& bc) const {
    const Value& v = (*current_rows_[bc.col_stage])[bc.col_idx];
    switch (bc.cond.kind) {
      case SqlCondition::Kind::Compare:
        return eval_filter_op(v, bc.cond.op, bc.cond.literal);
      case SqlCondition::Kind::Contains:
        return eval_filter_op(v, FilterOp::CONTAINS, bc.cond.literal);
      case SqlCondition::Kind::ColumnEq: {
        const Value& o = (*current_rows_[bc.other_stage])[bc.other_idx];
        return v.index() == o.index() && compare_values(v, o) == 0;
      }
    }
    return false;
  }

  bool stage_conditions_hold(size_t stage) const {
    for (const auto& bc : conditions_) {
      if (bc.stage != stage) continue;
      if (stage == 0 && base_.kind != BaseAccess::Kind::FullScan &&
          &bc == &conditions_[base_.condition] && base_.kind == BaseAccess::Kind::IndexEq) {
        continue;  // equality already satisfied by the index probe
      }
      if (!condition_holds(bc)) return false;
    }
    return true;
  }

  void open_stage(size_t stage) {
    Cursor& cur = cursors_[stage];
    cur.open = true;
    cur.pos = 0;
    cur.scan_pos = 0;
    cur.owned_matches.clear();
    cur.matches = nullptr;
    cur.full_scan = false;
    if (stage == 0) {
      switch (base_.kind) {
        case BaseAccess::Kind::FullScan:
          cur.full_scan = true;
          break;
        case BaseAccess::Kind::IndexEq: {
          if (stats_) stats_->index_lookups.fetch_add(1, std::memory_order_relaxed);
          auto it = base_.index->find(conditions_[base_.condition].cond.literal);
          if (it != base_.index->end()) cur.matches = &it->second;
          break;
        }
        case BaseAccess::Kind::IndexRange: {
          if (stats_) stats_->index_lookups.fetch_add(1, std::memory_order_relaxed);
          const Value& lit = conditions_[base_.condition].cond.literal;
          auto begin = base_.index->begin();
          auto end = base_.index->end();
          switch (conditions_[base_.condition].cond.op) {
            case FilterOp::LT: end = base_.index->lower_bound(lit); break;
            case FilterOp::LEQ: end = base_.index->upper_bound(lit); break;
            case FilterOp::GT: begin = base_.index->upper_bound(lit); break;
            case FilterOp::GEQ: begin = base_.index->lower_bound(lit); break;
            default: break;
          }
          for (auto it = begin; it != end; ++it) {
            cur.owned_matches.insert(cur.owned_matches.end(), it->second.begin(),
                                     it->second.end());
          }
          cur.matches = &cur.owned_matches;
          break;
        }
      }
    } else {
      const JoinStage& js = joins_[stage - 1];
      const Value& probe = (*current_rows_[js.left_stage])[js.left_col];
      if (js.index) {
        if (stats_) stats_->index_lookups.fetch_add(1, std::memory_order_relaxed);
        auto it = js.index->find(probe);
        if (it != js.index->end()) cur.matches = &it->second;
      } else {
        cur.matches = hash_probe(stage - 1, probe);
      }
    }
  }

  /// Moves stage's cursor to its next row satisfying the stage conditions.
  bool step_stage(size_t stage) {
    Cursor& cur = cursors_[stage];
    const RelSource::Table& t = stage == 0 ? *base_table_ : *joins_[stage - 1].table;
    while (true) {
      const std::vector<Value>* row = nullptr;
      if (cur.full_scan) {
        if (cur.scan_pos >= t.rows.size()) return false;
        if (stats_) stats_->rows_scanned.fetch_add(1, std::memory_order_relaxed);
        row = &t.rows[cur.scan_pos++];
      } else {
        if (!cur.matches || cur.pos >= cur.matches->size()) return false;
        row = &t.rows[(*cur.matches)[cur.pos++]];
      }
      current_rows_[stage] = row;
      if (stage_conditions_hold(stage)) return true;
    }
  }

  /// Depth-first advance over all stages; true when a full row is positioned.
  bool advance() {
    const size_t stages = 1 + joins_.size();
    size_t stage;
    if (!started_) {
      started_ = true;
      open_stage(0);
      stage = 0;
    } else {
      stage = stages - 1;  // deepest stage moves first
    }
    while (stage < stages) {
      if (step_stage(stage)) {
        ++stage;
        if (stage < stages) open_stage(stage);
      } else {
        if (stage == 0) return false;
        --stage;
      }
    }
    return true;
  }

  const RelSource& src_;
  SqlStatement stmt_;
  ExecStats* stats_;
  const RelSource::Table* base_table_ = nullptr;
  std::map<std::string, size_t> aliases_;
  std::vector<ResolvedSelect> select_;
  std::vector<JoinStage> joins_;
  std::vector<BoundCondition> conditions_;
  BaseAccess base_;
  std::vector<Cursor> cursors_;
  std::vector<const std::vector<Value>*> current_rows_;
  std::map<size_t, std::unique_ptr<std::unordered_map<std::string, std::vector<size_t>>>>
      hash_tables_;
  std::unordered_set<std::string> distinct_seen_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace

TupleStreamPtr RelSource::execute_sql(const std::string& sql, ExecStats* stats,
                                      std::string* explain) const {
  return execute_sql(parse_sql(sql), stats, explain);
}

TupleStreamPtr RelSource::execute_sql(const SqlStatement& stmt, ExecStats* stats,
                                      std::string* explain) const {
  return std::make_unique<SqlCursor>(*this, stmt, stats, explain);
}

std::vector<Binding> collect(TupleStream& s) {
  std::vector<Binding> out;
  while (auto b = s.next()) out.push_back(std::move(*b));
  return out;
}

}  // namespace lakefed
