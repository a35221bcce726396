#include "lakefed/plan_unit.hpp"

#include "lakefed/error.hpp"

namespace lakefed {

std::set<std::string> PlanUnit::variables() const {
  std::set<std::string> vars;
  for (const auto& star : stars) {
    auto sv = star.variables();
    vars.insert(sv.begin(), sv.end());
  }
  return vars;
}

size_t star_table_count(const StarShapedSubQuery& ssq, const RelationalMapping& mapping) {
  size_t count = 1;  // root alias
  for (const auto& p : ssq.patterns) {
    if (p.predicate.value == kRdfType) continue;
    auto it = mapping.predicate_map.find(p.predicate.value);
    if (it == mapping.predicate_map.end()) {
      throw UnmappedPredicate(p.predicate.value, mapping.class_iri);
    }
    count += it->second.join_path.size();  // fresh alias per path table
  }
  return count;
}

size_t PlanUnit::table_count(const Catalog& c) const {
  size_t count = 0;
  for (const auto& star : stars) {
    if (star.candidate_sources.empty()) continue;
    const auto& [source_id, class_iri] = *star.candidate_sources.begin();
    const RelationalMapping* mapping = c.find_mapping(source_id, class_iri);
    if (!mapping) continue;  // RDF star, no tables
    count += star_table_count(star, *mapping);
  }
  return count;
}

}  // namespace lakefed
