#pragma once

#include <set>

#include "lakefed/catalog.hpp"
#include "lakefed/plan_unit.hpp"
#include "lakefed/sql/native_query.hpp"

namespace lakefed {

/// Translates a (possibly merged) unit over one relational source into a
/// single flat join statement: SELECT of the needed variables' columns, FROM
/// the first star's root with INNER JOINs along foreign-key paths, cross-star
/// equalities for merged units, WHERE clauses for pushed filters and constant
/// objects. Serialization is deterministic; identical units give
/// byte-identical SQL.
///
/// Throws UnmappedPredicate or TableCapExceeded (> 6 tables).
NativeQuery unit_to_sql(const PlanUnit& unit, const Catalog& c,
                        const std::vector<FilterExpr>& pushed_filters,
                        const std::set<std::string>& needed_vars, bool distinct);

/// Single-star convenience used by tests and by the planner for unmerged units.
NativeQuery ssq_to_sql(const StarShapedSubQuery& ssq, const Catalog& c,
                       const std::vector<FilterExpr>& pushed_filters,
                       const std::set<std::string>& needed_vars, bool distinct);

/// Star-pattern request for an RDF source: the star's patterns verbatim.
/// Filters are never pushed to triple stores (Heuristic 2 applies to
/// relational sources only), so pushed_filters must be empty.
NativeQuery ssq_to_triple_requests(const StarShapedSubQuery& ssq,
                                   const std::vector<FilterExpr>& pushed_filters);

}  // namespace lakefed
