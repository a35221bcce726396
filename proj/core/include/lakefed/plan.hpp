#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lakefed/net_profile.hpp"
#include "lakefed/sql/native_query.hpp"

namespace lakefed {

enum class PlanMode { UNAWARE, AWARE };

std::string plan_mode_name(PlanMode mode);
PlanMode plan_mode_from_name(const std::string& name);

struct PlanNode;
using PlanNodePtr = std::unique_ptr<PlanNode>;

struct SourceScanOp {
  NativeQuery query;
};

struct EngineJoinOp {
  PlanNodePtr left;
  PlanNodePtr right;
  std::vector<std::string> join_vars;  // nonempty, bound in both children
};

struct EngineFilterOp {
  PlanNodePtr child;
  FilterExpr filter;
};

struct ProjectOp {
  PlanNodePtr child;
  std::vector<std::string> vars;
};

/// Bag union of scans answering the same star on several sources.
struct UnionOp {
  std::vector<PlanNodePtr> children;
};

struct PlanNode {
  std::variant<SourceScanOp, EngineJoinOp, EngineFilterOp, ProjectOp, UnionOp> op;
  /// Variables every tuple leaving this node binds.
  std::set<std::string> output_vars;
};

struct PhysicalPlan {
  PlanNodePtr root;
  PlanMode mode = PlanMode::UNAWARE;
  NetworkProfile network;
  bool distinct = false;
};

/// Debug serialization: node kind, children, native query text.
std::string plan_to_json(const PhysicalPlan& plan, int indent = 2);

/// Number of SourceScan leaves (Heuristic 1 shrinks this in aware mode).
size_t count_source_scans(const PhysicalPlan& plan);
size_t count_engine_joins(const PhysicalPlan& plan);

}  // namespace lakefed
