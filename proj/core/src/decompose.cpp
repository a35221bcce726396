#include "lakefed/decompose.hpp"

#include <algorithm>
#include <map>

#include "lakefed/error.hpp"

namespace lakefed {

std::set<std::string> StarShapedSubQuery::variables() const {
  std::set<std::string> vars;
  if (subject.is_variable()) vars.insert(subject.value);
  for (const auto& p : patterns) {
    if (p.object.is_variable()) vars.insert(p.object.value);
  }
  return vars;
}

std::string StarShapedSubQuery::type_restriction() const {
  for (const auto& p : patterns) {
    if (p.predicate.value == kRdfType && p.object.is_iri()) return p.object.value;
  }
  return "";
}

namespace {

// Key a subject term so IRI <x> and variable ?x do not collide.
std::string subject_key(const Term& t) {
  return (t.is_variable() ? "?" : "<") + t.value;
}

}  // namespace

DecomposedQuery decompose(const ValidatedQuery& vq) {
  const Query& q = vq.query();
  DecomposedQuery d;
  d.projection = q.projection;
  d.distinct = q.distinct;

  std::map<std::string, size_t> star_of_subject;
  for (const auto& p : q.patterns) {
    const std::string key = subject_key(p.subject);
    auto [it, inserted] = star_of_subject.emplace(key, d.ssqs.size());
    if (inserted) {
      StarShapedSubQuery ssq;
      ssq.subject = p.subject;
      d.ssqs.push_back(std::move(ssq));
    }
    d.ssqs[it->second].patterns.push_back(p);
  }

  // A filter belongs to the single star that binds its variable; filters on
  // variables visible in several stars stay at the engine.
  std::vector<std::set<std::string>> star_vars;
  star_vars.reserve(d.ssqs.size());
  for (const auto& ssq : d.ssqs) star_vars.push_back(ssq.variables());

  for (const auto& f : q.filters) {
    std::vector<size_t> owners;
    for (size_t i = 0; i < d.ssqs.size(); ++i) {
      if (star_vars[i].count(f.variable)) owners.push_back(i);
    }
    if (owners.size() == 1) {
      d.ssqs[owners.front()].filters.push_back(f);
    } else {
      d.residual_filters.push_back(f);
    }
  }

  for (size_t i = 0; i < d.ssqs.size(); ++i) {
    for (size_t j = i + 1; j < d.ssqs.size(); ++j) {
      std::vector<std::string> shared;
      std::set_intersection(star_vars[i].begin(), star_vars[i].end(), star_vars[j].begin(),
                            star_vars[j].end(), std::back_inserter(shared));
      for (const auto& v : shared) d.join_links.push_back({i, j, v});
    }
  }

  return d;
}

DecomposedQuery select_sources(DecomposedQuery d, const Catalog& c) {
  for (auto& ssq : d.ssqs) {
    const std::string type_class = ssq.type_restriction();
    bool first = true;
    std::set<std::pair<std::string, std::string>> candidates;
    for (const auto& p : ssq.patterns) {
      // `a <C>` restricts the class below; it does not participate in the
      // predicate intersection.
      if (p.predicate.value == kRdfType && p.object.is_iri()) continue;
      auto matches = molecules_for_predicate(c, p.predicate.value);
      if (first) {
        candidates = std::move(matches);
        first = false;
      } else {
        std::set<std::pair<std::string, std::string>> kept;
        for (const auto& m : matches) {
          if (candidates.count(m)) kept.insert(m);
        }
        candidates = std::move(kept);
      }
      if (candidates.empty()) {
        throw NoSourceForSubquery(term_to_string(ssq.subject), p.predicate.value);
      }
    }
    if (first) {
      // Star consists of type patterns only; every molecule of the class matches.
      for (const auto& m : c.molecules) {
        candidates.emplace(m.source_id, m.class_iri);
      }
    }
    if (!type_class.empty()) {
      std::set<std::pair<std::string, std::string>> kept;
      for (const auto& m : candidates) {
        if (m.second == type_class) kept.insert(m);
      }
      candidates = std::move(kept);
      if (candidates.empty()) {
        throw NoSourceForSubquery(term_to_string(ssq.subject), kRdfType + " " + type_class);
      }
    }
    ssq.candidate_sources = std::move(candidates);
  }
  return d;
}

}  // namespace lakefed
