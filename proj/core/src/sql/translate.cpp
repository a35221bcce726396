#include "lakefed/sql/translate.hpp"

#include <algorithm>
#include <map>

#include "lakefed/error.hpp"
#include "lakefed/sql/statement.hpp"

namespace lakefed {

namespace {

constexpr size_t kTableCap = 6;

struct Translation {
  SqlStatement stmt;
  size_t next_alias = 0;
  size_t tables_emitted = 0;
  std::string source_id;
  // First column each variable was bound to.
  std::map<std::string, QualifiedColumn> var_columns;
  // Variables in first-mention order, for the SELECT list.
  std::vector<std::string> var_order;

  std::string fresh_alias() { return "t" + std::to_string(next_alias++); }

  void count_table() {
    if (++tables_emitted > kTableCap) throw TableCapExceeded(tables_emitted);
  }

  /// Binds a variable to a column. A repeated binding adds an equality
  /// condition unless `covered` says the join structure already equates it
  /// (the cross-star ON anchor).
  void bind_var(const std::string& var, const QualifiedColumn& col, bool covered = false) {
    auto it = var_columns.find(var);
    if (it == var_columns.end()) {
      var_columns.emplace(var, col);
      var_order.push_back(var);
      return;
    }
    if (covered || it->second == col) return;
    SqlCondition cond;
    cond.kind = SqlCondition::Kind::ColumnEq;
    cond.column = col;
    cond.other = it->second;
    stmt.where.push_back(std::move(cond));
  }

  void constant_condition(const QualifiedColumn& col, const Value& v) {
    SqlCondition cond;
    cond.kind = SqlCondition::Kind::Compare;
    cond.column = col;
    cond.op = FilterOp::EQ;
    cond.literal = v;
    stmt.where.push_back(std::move(cond));
  }
};

/// Per-star alias bookkeeping: the root alias plus one alias per join-path
/// table of every pattern, so multi-valued attributes match independently.
struct StarAliases {
  std::string root;
  // pattern index -> aliases along its join path (ending at the mapped table)
  std::map<size_t, std::vector<std::string>> path_aliases;

  QualifiedColumn pattern_column(size_t pattern_idx, const PredicateMapping& pm) const {
    const auto& path = path_aliases.at(pattern_idx);
    const std::string& alias = path.empty() ? root : path.back();
    return {alias, pm.column};
  }
};

const RelationalMapping& mapping_of(const StarShapedSubQuery& star, const Catalog& c) {
  if (star.candidate_sources.size() != 1) {
    throw UnmappedPredicate("<ambiguous sources>", term_to_string(star.subject));
  }
  const auto& [source_id, class_iri] = *star.candidate_sources.begin();
  const RelationalMapping* m = c.find_mapping(source_id, class_iri);
  if (!m) throw UnknownMapping("class " + class_iri + " has no relational mapping at " + source_id);
  return *m;
}

const PredicateMapping& predicate_mapping(const RelationalMapping& m, const TriplePattern& p) {
  auto it = m.predicate_map.find(p.predicate.value);
  if (it == m.predicate_map.end()) throw UnmappedPredicate(p.predicate.value, m.class_iri);
  return it->second;
}

/// Column `var` maps to inside one already-emitted star.
QualifiedColumn star_var_column(const StarShapedSubQuery& star, const RelationalMapping& m,
                                const StarAliases& aliases, const std::string& var) {
  if (star.subject.is_variable() && star.subject.value == var) {
    return {aliases.root, m.subject_column};
  }
  for (size_t i = 0; i < star.patterns.size(); ++i) {
    const auto& p = star.patterns[i];
    if (p.predicate.value == kRdfType) continue;
    if (p.object.is_variable() && p.object.value == var) {
      return aliases.pattern_column(i, predicate_mapping(m, p));
    }
  }
  throw UnmappedPredicate("<unbound variable ?" + var + ">", m.class_iri);
}

/// Emits one star's tables and conditions. For the first star the root opens
/// the FROM clause; later stars attach through the cross-star equality
/// `on_left` = the column of `on_var` inside this star.
void emit_star(Translation& t, const StarShapedSubQuery& star, const RelationalMapping& m,
               StarAliases& aliases, const std::optional<QualifiedColumn>& on_left,
               const std::string& on_var) {
  // Which pattern (if any) carries the anchor column for the cross-star join.
  std::optional<size_t> anchor_pattern;
  bool subject_anchor = false;
  if (on_left) {
    subject_anchor = star.subject.is_variable() && star.subject.value == on_var;
    if (!subject_anchor) {
      for (size_t i = 0; i < star.patterns.size(); ++i) {
        const auto& p = star.patterns[i];
        if (p.predicate.value == kRdfType) continue;
        if (p.object.is_variable() && p.object.value == on_var) {
          anchor_pattern = i;
          break;
        }
      }
      if (!anchor_pattern) subject_anchor = true;
    }
  }

  auto join_to = [&](const std::string& table, const std::string& alias,
                     const QualifiedColumn& left, const std::string& right_column) {
    t.count_table();
    JoinClause j;
    j.table = {table, alias};
    j.left = left;
    j.right = {alias, right_column};
    t.stmt.joins.push_back(std::move(j));
  };

  if (!on_left) {
    aliases.root = t.fresh_alias();
    t.count_table();
    t.stmt.from = {m.root_table, aliases.root};
  } else if (subject_anchor) {
    // Root-anchored: JOIN root ON cross equality against the subject column.
    aliases.root = t.fresh_alias();
    join_to(m.root_table, aliases.root, *on_left, m.subject_column);
  } else {
    // Anchored at a pattern's mapped table: walk its join path backwards to
    // the root, then every other pattern forward as usual.
    const auto& p = star.patterns[*anchor_pattern];
    const PredicateMapping& pm = predicate_mapping(m, p);
    std::vector<std::string>& path = aliases.path_aliases[*anchor_pattern];
    path.resize(pm.join_path.size());
    for (auto& a : path) a = t.fresh_alias();
    aliases.root = t.fresh_alias();

    // End table first, joined by the cross-star equality.
    const std::string& end_alias = path.empty() ? aliases.root : path.back();
    const std::string& end_table =
        pm.join_path.empty() ? m.root_table : pm.join_path.back().to_table;
    join_to(end_table, end_alias, *on_left, pm.column);
    // Then hops in reverse order back to the root.
    for (size_t h = pm.join_path.size(); h-- > 0;) {
      const JoinHop& hop = pm.join_path[h];
      const std::string& to_alias = path[h];                               // already emitted
      const std::string& from_alias = h == 0 ? aliases.root : path[h - 1];  // new table
      const std::string& from_table = h == 0 ? m.root_table : pm.join_path[h - 1].to_table;
      join_to(from_table, from_alias, {to_alias, hop.to_column}, hop.from_column);
    }
  }

  // Remaining patterns chain forward from the root.
  for (size_t i = 0; i < star.patterns.size(); ++i) {
    const auto& p = star.patterns[i];
    if (p.predicate.value == kRdfType) {
      if (p.object.is_variable()) throw UnmappedPredicate(kRdfType, m.class_iri);
      continue;
    }
    if (anchor_pattern && *anchor_pattern == i) continue;
    const PredicateMapping& pm = predicate_mapping(m, p);
    std::vector<std::string>& path = aliases.path_aliases[i];
    std::string at_alias = aliases.root;
    for (const auto& hop : pm.join_path) {
      std::string alias = t.fresh_alias();
      join_to(hop.to_table, alias, {at_alias, hop.from_column}, hop.to_column);
      path.push_back(alias);
      at_alias = alias;
    }
    if (path.empty()) aliases.path_aliases[i] = {};
  }

  // Subject: bind the variable or pin the IRI.
  if (star.subject.is_variable()) {
    t.bind_var(star.subject.value, {aliases.root, m.subject_column},
               /*covered=*/on_left.has_value() && subject_anchor);
  } else {
    t.constant_condition({aliases.root, m.subject_column}, star.subject.to_value());
  }

  // Objects: bind variables, pin constants.
  for (size_t i = 0; i < star.patterns.size(); ++i) {
    const auto& p = star.patterns[i];
    if (p.predicate.value == kRdfType) continue;
    const QualifiedColumn col = aliases.pattern_column(i, predicate_mapping(m, p));
    if (p.object.is_variable()) {
      const bool covered = anchor_pattern && *anchor_pattern == i && p.object.value == on_var;
      t.bind_var(p.object.value, col, covered);
    } else {
      t.constant_condition(col, p.object.to_value());
    }
  }
}

}  // namespace

NativeQuery unit_to_sql(const PlanUnit& unit, const Catalog& c,
                        const std::vector<FilterExpr>& pushed_filters,
                        const std::set<std::string>& needed_vars, bool distinct) {
  Translation t;
  t.stmt.distinct = distinct;

  std::vector<StarAliases> aliases(unit.stars.size());
  std::vector<const RelationalMapping*> mappings;
  mappings.reserve(unit.stars.size());
  for (const auto& star : unit.stars) {
    mappings.push_back(&mapping_of(star, c));
    if (t.source_id.empty()) {
      t.source_id = mappings.back()->source_id;
    } else if (t.source_id != mappings.back()->source_id) {
      throw UnknownMapping("merged unit spans sources " + t.source_id + " and " +
                           mappings.back()->source_id);
    }
  }

  for (size_t k = 0; k < unit.stars.size(); ++k) {
    std::optional<QualifiedColumn> on_left;
    std::string on_var;
    if (k > 0) {
      // The first link attaching star k to an earlier star provides the ON
      // equality; remaining shared variables are equated by bind_var.
      for (const auto& l : unit.links) {
        if (l.right_star != k || l.left_star >= k) continue;
        const std::string& var = l.variables.front();
        on_left = star_var_column(unit.stars[l.left_star], *mappings[l.left_star],
                                  aliases[l.left_star], var);
        on_var = var;
        break;
      }
      if (!on_left) {
        throw DisconnectedPlan("merged star " + std::to_string(k) +
                               " has no link to an earlier star");
      }
    }
    emit_star(t, unit.stars[k], *mappings[k], aliases[k], on_left, on_var);
  }

  for (const auto& f : pushed_filters) {
    auto it = t.var_columns.find(f.variable);
    if (it == t.var_columns.end()) {
      throw UnmappedPredicate("<filter variable ?" + f.variable + ">", "pushed filter");
    }
    SqlCondition cond;
    cond.column = it->second;
    if (f.op == FilterOp::CONTAINS) {
      cond.kind = SqlCondition::Kind::Contains;
      cond.literal = f.constant_value();
    } else {
      cond.kind = SqlCondition::Kind::Compare;
      cond.op = f.op;
      cond.literal = f.constant_value();
    }
    t.stmt.where.push_back(std::move(cond));
  }

  SqlScan scan;
  for (const auto& var : t.var_order) {
    if (!needed_vars.count(var)) continue;
    SelectItem item;
    item.column = t.var_columns.at(var);
    item.name = var;
    t.stmt.select.push_back(item);
    scan.output_map[var] = var;
  }
  if (t.stmt.select.empty()) {
    // A scan nobody projects from still needs one column to count rows.
    SelectItem item;
    item.column = {aliases.front().root, mappings.front()->subject_column};
    item.name = "_row";
    t.stmt.select.push_back(item);
  }

  scan.text = sql_to_string(t.stmt);
  return NativeQuery{t.source_id, std::move(scan)};
}

NativeQuery ssq_to_sql(const StarShapedSubQuery& ssq, const Catalog& c,
                       const std::vector<FilterExpr>& pushed_filters,
                       const std::set<std::string>& needed_vars, bool distinct) {
  PlanUnit unit;
  unit.stars.push_back(ssq);
  return unit_to_sql(unit, c, pushed_filters, needed_vars, distinct);
}

NativeQuery ssq_to_triple_requests(const StarShapedSubQuery& ssq,
                                   const std::vector<FilterExpr>& pushed_filters) {
  if (!pushed_filters.empty()) {
    throw Error("filters are never pushed to triple stores");
  }
  if (ssq.candidate_sources.size() != 1) {
    throw UnknownMapping("triple request needs exactly one source for " +
                         term_to_string(ssq.subject));
  }
  TripleRequest req;
  req.patterns = ssq.patterns;
  return NativeQuery{ssq.candidate_sources.begin()->first, std::move(req)};
}

}  // namespace lakefed
