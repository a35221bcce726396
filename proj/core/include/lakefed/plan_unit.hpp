#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lakefed/decompose.hpp"

namespace lakefed {

/// An equality between two stars of the same unit. `variables` holds every
/// variable the two stars share, sorted; all of them are equated when the
/// unit is translated.
struct MergeLink {
  size_t left_star;
  size_t right_star;
  std::vector<std::string> variables;

  bool operator==(const MergeLink&) const = default;
};

/// What one source scan evaluates: a single star, or several stars of the
/// same relational source combined by join pushdown.
struct PlanUnit {
  std::vector<StarShapedSubQuery> stars;
  std::vector<MergeLink> links;

  bool merged() const { return stars.size() > 1; }

  /// Variables bound by any star of this unit.
  std::set<std::string> variables() const;

  /// Relational tables referenced when this unit is translated: one alias for
  /// each star's root plus one per join-path table of each mapped pattern.
  size_t table_count(const Catalog& c) const;
};

/// Tables referenced by a single star under its relational mapping.
size_t star_table_count(const StarShapedSubQuery& ssq, const RelationalMapping& mapping);

}  // namespace lakefed
