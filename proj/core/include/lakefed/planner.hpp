#pragma once

#include <optional>
#include <variant>

#include "lakefed/catalog.hpp"
#include "lakefed/plan.hpp"
#include "lakefed/plan_unit.hpp"

namespace lakefed {

struct PlannerConfig {
  /// Mean latency at and above which a network counts as slow.
  double slow_threshold_ms = 3.0;
  SelectivityConfig selectivity;
  /// Upper bound on relational tables of one merged source query.
  size_t table_cap = 6;
};

enum class NetworkSpeed { FAST, SLOW };

/// SLOW iff the profile's mean latency reaches the configured threshold.
NetworkSpeed classify_speed(const NetworkProfile& net, const PlannerConfig& cfg = {});

enum class NoMergeReason { DifferentSource, NotRelational, MultipleCandidates, NotIndexed, TableCap };

std::string no_merge_reason_name(NoMergeReason reason);

/// Outcome of a join-pushdown attempt: the combined unit, or why not.
using MergeResult = std::variant<PlanUnit, NoMergeReason>;

/// Heuristic 1: combine two stars over the same relational source into one
/// source query if the columns the shared variable maps to are indexed on
/// both sides and the merged unit stays within the table cap.
MergeResult apply_h1_merge(const StarShapedSubQuery& a, const StarShapedSubQuery& b,
                           const std::string& link_variable, const Catalog& c,
                           const PlannerConfig& cfg = {});

enum class FilterPlacement { ENGINE, SOURCE };

/// Heuristic 2: filters run at the engine unless the filtered attribute is
/// indexed and the network is slow. Stars over RDF sources always filter at
/// the engine.
FilterPlacement apply_h2_filter_placement(const StarShapedSubQuery& ssq, const FilterExpr& f,
                                          const Catalog& c, const NetworkProfile& net,
                                          const PlannerConfig& cfg = {});

/// Join order of the left-deep tree: units ascending by cardinality estimate,
/// each next unit sharing a variable with the already-joined prefix. Ties
/// break by textual (input) order. Returns positions into `units`.
/// Throws DisconnectedPlan if the units do not connect.
std::vector<size_t> order_joins(const std::vector<PlanUnit>& units, const Catalog& c,
                                const PlannerConfig& cfg = {});

/// Builds the physical plan for a fully source-annotated query.
///  - UNAWARE: one scan per star, every filter at the engine.
///  - AWARE: Heuristic 1 merging to a fixpoint, then Heuristic 2 per filter.
PhysicalPlan plan(const DecomposedQuery& d, const Catalog& c, const NetworkProfile& net,
                  PlanMode mode, const PlannerConfig& cfg = {});

}  // namespace lakefed
