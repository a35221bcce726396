#include "lakefed/planner.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lakefed/error.hpp"
#include "lakefed/sql/translate.hpp"

namespace lakefed {

NetworkSpeed classify_speed(const NetworkProfile& net, const PlannerConfig& cfg) {
  return net.mean_latency_ms() >= cfg.slow_threshold_ms ? NetworkSpeed::SLOW
                                                        : NetworkSpeed::FAST;
}

std::string no_merge_reason_name(NoMergeReason reason) {
  switch (reason) {
    case NoMergeReason::DifferentSource: return "DifferentSource";
    case NoMergeReason::NotRelational: return "NotRelational";
    case NoMergeReason::MultipleCandidates: return "MultipleCandidates";
    case NoMergeReason::NotIndexed: return "NotIndexed";
    case NoMergeReason::TableCap: return "TableCap";
  }
  return "?";
}

namespace {

const std::pair<std::string, std::string>* single_candidate(const StarShapedSubQuery& s) {
  return s.candidate_sources.size() == 1 ? &*s.candidate_sources.begin() : nullptr;
}

/// Column a variable maps to within one star, as (table, column).
std::optional<std::pair<std::string, std::string>> mapped_column(const StarShapedSubQuery& ssq,
                                                                 const RelationalMapping& m,
                                                                 const std::string& var) {
  if (ssq.subject.is_variable() && ssq.subject.value == var) {
    return std::make_pair(m.root_table, m.subject_column);
  }
  for (const auto& p : ssq.patterns) {
    if (p.predicate.value == kRdfType) continue;
    if (p.object.is_variable() && p.object.value == var) {
      auto it = m.predicate_map.find(p.predicate.value);
      if (it != m.predicate_map.end()) {
        return std::make_pair(it->second.table, it->second.column);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> shared_variables(const StarShapedSubQuery& a,
                                          const StarShapedSubQuery& b) {
  auto va = a.variables();
  auto vb = b.variables();
  std::vector<std::string> shared;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(shared));
  return shared;
}

/// Checks Heuristic 1's conditions for two single-candidate stars linked by
/// `var`. Returns the reason merging is off the table, or nothing if it is on.
std::optional<NoMergeReason> h1_obstacle(const StarShapedSubQuery& a,
                                         const StarShapedSubQuery& b, const std::string& var,
                                         const Catalog& c) {
  const auto* ca = single_candidate(a);
  const auto* cb = single_candidate(b);
  if (!ca || !cb) return NoMergeReason::MultipleCandidates;
  if (ca->first != cb->first) return NoMergeReason::DifferentSource;
  if (c.source_models.at(ca->first) != SourceModel::RELATIONAL) {
    return NoMergeReason::NotRelational;
  }
  const RelationalMapping* ma = c.find_mapping(ca->first, ca->second);
  const RelationalMapping* mb = c.find_mapping(cb->first, cb->second);
  auto col_a = ma ? mapped_column(a, *ma, var) : std::nullopt;
  auto col_b = mb ? mapped_column(b, *mb, var) : std::nullopt;
  if (!col_a || !col_b) return NoMergeReason::NotIndexed;
  if (!is_indexed(c, ca->first, col_a->first, col_a->second) ||
      !is_indexed(c, cb->first, col_b->first, col_b->second)) {
    return NoMergeReason::NotIndexed;
  }
  return std::nullopt;
}

/// MergeLink variable list: the join attribute first, the remaining shared
/// variables after it, so the translator knows which equality carries the ON.
std::vector<std::string> link_variables(const StarShapedSubQuery& a,
                                        const StarShapedSubQuery& b,
                                        const std::string& join_var) {
  std::vector<std::string> vars = shared_variables(a, b);
  auto it = std::find(vars.begin(), vars.end(), join_var);
  if (it != vars.end()) vars.erase(it);
  vars.insert(vars.begin(), join_var);
  return vars;
}

/// Reorders a unit's stars breadth-first from `start` so that every star
/// after the first is linked to an earlier one.
PlanUnit reorder_from(const PlanUnit& unit, size_t start) {
  const size_t n = unit.stars.size();
  std::vector<size_t> order;
  std::vector<bool> seen(n, false);
  order.push_back(start);
  seen[start] = true;
  for (size_t at = 0; at < order.size(); ++at) {
    std::vector<size_t> next;
    for (const auto& l : unit.links) {
      if (l.left_star == order[at] && !seen[l.right_star]) next.push_back(l.right_star);
      if (l.right_star == order[at] && !seen[l.left_star]) next.push_back(l.left_star);
    }
    std::sort(next.begin(), next.end());
    for (size_t s : next) {
      if (!seen[s]) {
        seen[s] = true;
        order.push_back(s);
      }
    }
  }
  std::vector<size_t> position(n);
  for (size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  PlanUnit out;
  for (size_t s : order) out.stars.push_back(unit.stars[s]);
  for (const auto& l : unit.links) {
    MergeLink nl{position[l.left_star], position[l.right_star], l.variables};
    if (nl.left_star > nl.right_star) std::swap(nl.left_star, nl.right_star);
    out.links.push_back(std::move(nl));
  }
  std::sort(out.links.begin(), out.links.end(), [](const MergeLink& x, const MergeLink& y) {
    return std::tie(x.right_star, x.left_star) < std::tie(y.right_star, y.left_star);
  });
  return out;
}

/// Combines two units linked by `var` between stars a_idx/b_idx, keeping the
/// invariant that star k > 0 always links to some star before it.
PlanUnit concat_units(const PlanUnit& ua, const PlanUnit& ub, size_t a_idx, size_t b_idx,
                      const std::string& var) {
  PlanUnit b_ordered = reorder_from(ub, b_idx);
  PlanUnit merged = ua;
  const size_t offset = ua.stars.size();
  for (auto& star : b_ordered.stars) merged.stars.push_back(std::move(star));
  // Cross links between every star pair that shares variables.
  for (size_t i = 0; i < ua.stars.size(); ++i) {
    for (size_t j = 0; j < b_ordered.stars.size(); ++j) {
      auto shared = shared_variables(merged.stars[i], merged.stars[offset + j]);
      if (shared.empty()) continue;
      if (i == a_idx && j == 0) {
        merged.links.push_back({i, offset + j, link_variables(merged.stars[i],
                                                              merged.stars[offset + j], var)});
      } else {
        merged.links.push_back({i, offset + j, std::move(shared)});
      }
    }
  }
  for (const auto& l : b_ordered.links) {
    merged.links.push_back({l.left_star + offset, l.right_star + offset, l.variables});
  }
  return merged;
}

uint64_t unit_estimate(const PlanUnit& unit, const Catalog& c, const SelectivityConfig& sel) {
  uint64_t est = UINT64_MAX;
  for (const auto& star : unit.stars) {
    est = std::min(est, estimate_cardinality(c, star, sel));
  }
  return est;
}

}  // namespace

MergeResult apply_h1_merge(const StarShapedSubQuery& a, const StarShapedSubQuery& b,
                           const std::string& link_variable, const Catalog& c,
                           const PlannerConfig& cfg) {
  if (auto obstacle = h1_obstacle(a, b, link_variable, c)) return *obstacle;
  PlanUnit merged;
  merged.stars = {a, b};
  merged.links.push_back({0, 1, link_variables(a, b, link_variable)});
  if (merged.table_count(c) > cfg.table_cap) return NoMergeReason::TableCap;
  return merged;
}

FilterPlacement apply_h2_filter_placement(const StarShapedSubQuery& ssq, const FilterExpr& f,
                                          const Catalog& c, const NetworkProfile& net,
                                          const PlannerConfig& cfg) {
  const auto* cand = single_candidate(ssq);
  if (!cand) return FilterPlacement::ENGINE;
  if (c.source_models.at(cand->first) != SourceModel::RELATIONAL) {
    return FilterPlacement::ENGINE;  // the heuristic speaks about RDBs only
  }
  const RelationalMapping* mapping = c.find_mapping(cand->first, cand->second);
  auto col = mapping ? mapped_column(ssq, *mapping, f.variable) : std::nullopt;
  if (!col) return FilterPlacement::ENGINE;
  const bool indexed = is_indexed(c, cand->first, col->first, col->second);
  const bool slow = classify_speed(net, cfg) == NetworkSpeed::SLOW;
  return indexed && slow ? FilterPlacement::SOURCE : FilterPlacement::ENGINE;
}

std::vector<size_t> order_joins(const std::vector<PlanUnit>& units, const Catalog& c,
                                const PlannerConfig& cfg) {
  const size_t n = units.size();
  std::vector<uint64_t> est(n);
  std::vector<std::set<std::string>> vars(n);
  for (size_t i = 0; i < n; ++i) {
    est[i] = unit_estimate(units[i], c, cfg.selectivity);
    vars[i] = units[i].variables();
  }

  std::vector<size_t> order;
  std::vector<bool> used(n, false);
  std::set<std::string> bound;
  for (size_t step = 0; step < n; ++step) {
    size_t best = n;
    for (size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (step > 0) {
        bool connected = std::any_of(vars[i].begin(), vars[i].end(),
                                     [&](const std::string& v) { return bound.count(v); });
        if (!connected) continue;
      }
      if (best == n || est[i] < est[best]) best = i;  // ties keep textual order
    }
    if (best == n) {
      throw DisconnectedPlan("no remaining unit shares a variable with the joined prefix");
    }
    used[best] = true;
    order.push_back(best);
    bound.insert(vars[best].begin(), vars[best].end());
  }
  return order;
}

namespace {

struct UnitPlan {
  PlanUnit unit;
  std::vector<FilterExpr> pushed;  // filters evaluated at the source
  std::vector<FilterExpr> engine;  // filters evaluated above the scan
};

PlanNodePtr make_scan(NativeQuery q, std::set<std::string> output) {
  auto node = std::make_unique<PlanNode>();
  node->output_vars = std::move(output);
  node->op = SourceScanOp{std::move(q)};
  return node;
}

/// Scan (or union of scans) for one unit, engine filters stacked on top.
PlanNodePtr build_unit_node(const UnitPlan& up, const Catalog& c,
                            const std::set<std::string>& needed, bool sql_distinct) {
  PlanNodePtr node;
  const bool merged_or_single =
      up.unit.stars.size() > 1 || up.unit.stars.front().candidate_sources.size() == 1;
  if (merged_or_single) {
    const auto& [source_id, class_iri] = *up.unit.stars.front().candidate_sources.begin();
    if (c.source_models.at(source_id) == SourceModel::RELATIONAL) {
      node = make_scan(unit_to_sql(up.unit, c, up.pushed, needed, sql_distinct), needed);
    } else {
      node = make_scan(ssq_to_triple_requests(up.unit.stars.front(), up.pushed), needed);
    }
  } else {
    // Several candidate sources answer this star: take the bag union.
    UnionOp u;
    for (const auto& cand : up.unit.stars.front().candidate_sources) {
      StarShapedSubQuery star = up.unit.stars.front();
      star.candidate_sources = {cand};
      NativeQuery q = c.source_models.at(cand.first) == SourceModel::RELATIONAL
                          ? ssq_to_sql(star, c, up.pushed, needed, false)
                          : ssq_to_triple_requests(star, up.pushed);
      u.children.push_back(make_scan(std::move(q), needed));
    }
    auto union_node = std::make_unique<PlanNode>();
    union_node->output_vars = needed;
    union_node->op = std::move(u);
    node = std::move(union_node);
  }
  for (const auto& f : up.engine) {
    auto filter_node = std::make_unique<PlanNode>();
    filter_node->output_vars = node->output_vars;
    filter_node->op = EngineFilterOp{std::move(node), f};
    node = std::move(filter_node);
  }
  return node;
}

}  // namespace

PhysicalPlan plan(const DecomposedQuery& d, const Catalog& c, const NetworkProfile& net,
                  PlanMode mode, const PlannerConfig& cfg) {
  for (const auto& ssq : d.ssqs) {
    if (ssq.candidate_sources.empty()) {
      throw UnknownMapping("star " + term_to_string(ssq.subject) +
                           " has no selected source; run select_sources first");
    }
  }

  std::vector<PlanUnit> units;
  units.reserve(d.ssqs.size());
  for (const auto& ssq : d.ssqs) {
    PlanUnit u;
    u.stars.push_back(ssq);
    units.push_back(std::move(u));
  }

  if (mode == PlanMode::AWARE) {
    // Heuristic 1 to a fixpoint: merge the cheapest qualifying pair first.
    while (true) {
      size_t best_i = units.size(), best_j = units.size(), best_ai = 0, best_bj = 0;
      std::string best_var;
      uint64_t best_cost = UINT64_MAX;
      for (size_t i = 0; i < units.size(); ++i) {
        for (size_t j = i + 1; j < units.size(); ++j) {
          bool found = false;
          for (size_t ai = 0; ai < units[i].stars.size() && !found; ++ai) {
            for (size_t bj = 0; bj < units[j].stars.size() && !found; ++bj) {
              for (const auto& var :
                   shared_variables(units[i].stars[ai], units[j].stars[bj])) {
                if (h1_obstacle(units[i].stars[ai], units[j].stars[bj], var, c)) continue;
                PlanUnit candidate = concat_units(units[i], units[j], ai, bj, var);
                if (candidate.table_count(c) > cfg.table_cap) continue;
                uint64_t cost = unit_estimate(units[i], c, cfg.selectivity) +
                                unit_estimate(units[j], c, cfg.selectivity);
                if (cost < best_cost) {
                  best_cost = cost;
                  best_i = i;
                  best_j = j;
                  best_ai = ai;
                  best_bj = bj;
                  best_var = var;
                }
                found = true;
                break;
              }
            }
          }
        }
      }
      if (best_i == units.size()) break;
      PlanUnit merged =
          concat_units(units[best_i], units[best_j], best_ai, best_bj, best_var);
      units[best_i] = std::move(merged);
      units.erase(units.begin() + static_cast<std::ptrdiff_t>(best_j));
    }
  }

  // Heuristic 2 per filter; in unaware mode every filter stays at the engine.
  std::vector<UnitPlan> unit_plans;
  unit_plans.reserve(units.size());
  for (auto& unit : units) {
    UnitPlan up;
    up.unit = std::move(unit);
    for (const auto& star : up.unit.stars) {
      for (const auto& f : star.filters) {
        FilterPlacement placement =
            mode == PlanMode::AWARE ? apply_h2_filter_placement(star, f, c, net, cfg)
                                    : FilterPlacement::ENGINE;
        (placement == FilterPlacement::SOURCE ? up.pushed : up.engine).push_back(f);
      }
    }
    unit_plans.push_back(std::move(up));
  }

  // Variables each scan must ship: the projection, variables of filters the
  // engine still evaluates, and variables shared with other units.
  std::vector<std::set<std::string>> needed(unit_plans.size());
  for (size_t i = 0; i < unit_plans.size(); ++i) {
    const auto unit_vars = unit_plans[i].unit.variables();
    auto keep = [&](const std::string& v) {
      if (unit_vars.count(v)) needed[i].insert(v);
    };
    for (const auto& v : d.projection) keep(v);
    for (const auto& f : d.residual_filters) keep(f.variable);
    for (const auto& f : unit_plans[i].engine) keep(f.variable);
    for (size_t j = 0; j < unit_plans.size(); ++j) {
      if (i == j) continue;
      for (const auto& v : unit_plans[j].unit.variables()) keep(v);
    }
  }

  const bool sql_distinct = d.distinct && unit_plans.size() == 1 &&
                            unit_plans.front().engine.empty() && d.residual_filters.empty();

  std::vector<PlanNodePtr> nodes;
  nodes.reserve(unit_plans.size());
  std::vector<PlanUnit> bare_units;
  for (auto& up : unit_plans) bare_units.push_back(up.unit);
  for (size_t i = 0; i < unit_plans.size(); ++i) {
    nodes.push_back(build_unit_node(unit_plans[i], c, needed[i], sql_distinct));
  }

  const std::vector<size_t> order = order_joins(bare_units, c, cfg);

  PlanNodePtr root = std::move(nodes[order[0]]);
  for (size_t k = 1; k < order.size(); ++k) {
    PlanNodePtr right = std::move(nodes[order[k]]);
    std::vector<std::string> join_vars;
    std::set_intersection(root->output_vars.begin(), root->output_vars.end(),
                          right->output_vars.begin(), right->output_vars.end(),
                          std::back_inserter(join_vars));
    if (join_vars.empty()) {
      throw DisconnectedPlan("engine join without shared variables");
    }
    auto join = std::make_unique<PlanNode>();
    join->output_vars = root->output_vars;
    join->output_vars.insert(right->output_vars.begin(), right->output_vars.end());
    join->op = EngineJoinOp{std::move(root), std::move(right), std::move(join_vars)};
    root = std::move(join);
  }

  for (const auto& f : d.residual_filters) {
    auto filter_node = std::make_unique<PlanNode>();
    filter_node->output_vars = root->output_vars;
    filter_node->op = EngineFilterOp{std::move(root), f};
    root = std::move(filter_node);
  }

  auto project = std::make_unique<PlanNode>();
  project->output_vars = std::set<std::string>(d.projection.begin(), d.projection.end());
  project->op = ProjectOp{std::move(root), d.projection};
  root = std::move(project);

  PhysicalPlan p;
  p.root = std::move(root);
  p.mode = mode;
  p.network = net;
  p.distinct = d.distinct;
  return p;
}

}  // namespace lakefed
