#include "lakefed/sparql/validate.hpp"

#include <set>
#include <vector>

#include "lakefed/error.hpp"

namespace lakefed {

namespace {

std::set<std::string> pattern_variables(const TriplePattern& p) {
  std::set<std::string> vars;
  if (p.subject.is_variable()) vars.insert(p.subject.value);
  if (p.object.is_variable()) vars.insert(p.object.value);
  return vars;
}

}  // namespace

ValidatedQuery validate_query(const Query& q) {
  std::set<std::string> bound;
  std::vector<std::set<std::string>> per_pattern;
  per_pattern.reserve(q.patterns.size());
  for (const auto& p : q.patterns) {
    per_pattern.push_back(pattern_variables(p));
    bound.insert(per_pattern.back().begin(), per_pattern.back().end());
  }

  for (const auto& v : q.projection) {
    if (!bound.count(v)) throw UnboundProjection(v);
  }
  for (const auto& f : q.filters) {
    if (!bound.count(f.variable)) throw UnboundFilterVariable(f.variable);
  }

  // Connectivity over the pattern graph: patterns are nodes, an edge exists
  // whenever two patterns share a variable.
  const size_t n = q.patterns.size();
  std::vector<bool> reached(n, false);
  std::vector<size_t> stack{0};
  reached[0] = true;
  size_t seen = 1;
  while (!stack.empty()) {
    size_t cur = stack.back();
    stack.pop_back();
    for (size_t i = 0; i < n; ++i) {
      if (reached[i]) continue;
      bool shares = false;
      for (const auto& v : per_pattern[cur]) {
        if (per_pattern[i].count(v)) {
          shares = true;
          break;
        }
      }
      if (shares) {
        reached[i] = true;
        ++seen;
        stack.push_back(i);
      }
    }
  }
  if (seen != n) {
    for (size_t i = 0; i < n; ++i) {
      if (!reached[i]) {
        throw DisconnectedPattern("pattern " + std::to_string(i + 1) + " (" +
                                  term_to_string(q.patterns[i].subject) + " " +
                                  term_to_string(q.patterns[i].predicate) + " ...)" +
                                  " shares no variable with the first pattern's component");
      }
    }
  }

  return ValidatedQuery(q);
}

}  // namespace lakefed
