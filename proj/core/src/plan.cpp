#include "lakefed/plan.hpp"

#include <json.hpp>

#include "lakefed/error.hpp"

namespace lakefed {

using nlohmann::json;

std::string plan_mode_name(PlanMode mode) {
  return mode == PlanMode::AWARE ? "aware" : "unaware";
}

PlanMode plan_mode_from_name(const std::string& name) {
  if (name == "aware") return PlanMode::AWARE;
  if (name == "unaware") return PlanMode::UNAWARE;
  throw ConfigError("unknown plan mode '" + name + "' (expected aware|unaware)");
}

namespace {

json node_to_json(const PlanNode& node) {
  json j;
  j["output"] = node.output_vars;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SourceScanOp>) {
          j["kind"] = "source_scan";
          j["source"] = op.query.source_id;
          if (op.query.is_sql()) {
            j["native"] = op.query.sql().text;
          } else {
            json patterns = json::array();
            for (const auto& p : op.query.triples().patterns) {
              patterns.push_back(term_to_string(p.subject) + " " + term_to_string(p.predicate) +
                                 " " + term_to_string(p.object));
            }
            j["native"] = patterns;
          }
        } else if constexpr (std::is_same_v<T, EngineJoinOp>) {
          j["kind"] = "engine_join";
          j["join_vars"] = op.join_vars;
          j["left"] = node_to_json(*op.left);
          j["right"] = node_to_json(*op.right);
        } else if constexpr (std::is_same_v<T, EngineFilterOp>) {
          j["kind"] = "engine_filter";
          if (op.filter.op == FilterOp::CONTAINS) {
            j["filter"] = "CONTAINS(?" + op.filter.variable + ", " +
                          term_to_string(op.filter.constant) + ")";
          } else {
            j["filter"] = "?" + op.filter.variable + " " + filter_op_symbol(op.filter.op) + " " +
                          term_to_string(op.filter.constant);
          }
          j["child"] = node_to_json(*op.child);
        } else if constexpr (std::is_same_v<T, ProjectOp>) {
          j["kind"] = "project";
          j["vars"] = op.vars;
          j["child"] = node_to_json(*op.child);
        } else if constexpr (std::is_same_v<T, UnionOp>) {
          j["kind"] = "union";
          json children = json::array();
          for (const auto& c : op.children) children.push_back(node_to_json(*c));
          j["children"] = std::move(children);
        }
      },
      node.op);
  return j;
}

template <typename F>
void visit_nodes(const PlanNode& node, F&& f) {
  f(node);
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, EngineJoinOp>) {
          visit_nodes(*op.left, f);
          visit_nodes(*op.right, f);
        } else if constexpr (std::is_same_v<T, EngineFilterOp>) {
          visit_nodes(*op.child, f);
        } else if constexpr (std::is_same_v<T, ProjectOp>) {
          visit_nodes(*op.child, f);
        } else if constexpr (std::is_same_v<T, UnionOp>) {
          for (const auto& c : op.children) visit_nodes(*c, f);
        }
      },
      node.op);
}

}  // namespace

std::string plan_to_json(const PhysicalPlan& plan, int indent) {
  json j;
  j["mode"] = plan_mode_name(plan.mode);
  j["network"] = plan.network.name;
  j["distinct"] = plan.distinct;
  j["root"] = node_to_json(*plan.root);
  return j.dump(indent);
}

size_t count_source_scans(const PhysicalPlan& plan) {
  size_t n = 0;
  visit_nodes(*plan.root, [&](const PlanNode& node) {
    if (std::holds_alternative<SourceScanOp>(node.op)) ++n;
  });
  return n;
}

size_t count_engine_joins(const PhysicalPlan& plan) {
  size_t n = 0;
  visit_nodes(*plan.root, [&](const PlanNode& node) {
    if (std::holds_alternative<EngineJoinOp>(node.op)) ++n;
  });
  return n;
}

}  // namespace lakefed
