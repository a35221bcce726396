#pragma once

#include <set>
#include <string>
#include <vector>

#include "lakefed/catalog.hpp"
#include "lakefed/sparql/validate.hpp"

namespace lakefed {

/// A group of triple patterns sharing one subject term, with the filters that
/// only touch this group and the sources able to answer it.
struct StarShapedSubQuery {
  Term subject;
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  std::set<std::pair<std::string, std::string>> candidate_sources;  // (source_id, class_iri)

  /// Variables bound by this star (subject and object positions).
  std::set<std::string> variables() const;

  /// Class IRI demanded by an `?s a <C>` pattern, empty if none.
  std::string type_restriction() const;
};

/// An edge between two stars: they share `variable`.
struct JoinLink {
  size_t left;   // index into ssqs, left < right
  size_t right;
  std::string variable;

  bool operator==(const JoinLink&) const = default;
};

struct DecomposedQuery {
  std::vector<StarShapedSubQuery> ssqs;
  std::vector<JoinLink> join_links;
  std::vector<FilterExpr> residual_filters;  // touch variables of several stars
  std::vector<std::string> projection;
  bool distinct = false;
};

/// Groups the query's patterns by subject term (stars appear in first-mention
/// order), attaches single-star filters, and derives the join links from
/// variables shared between stars. Sources are left unset.
DecomposedQuery decompose(const ValidatedQuery& q);

/// Annotates every star with the (source, class) pairs whose molecule covers
/// all of the star's predicates; an `a <C>` pattern restricts to class C.
/// Throws NoSourceForSubquery if a star cannot be answered.
DecomposedQuery select_sources(DecomposedQuery d, const Catalog& c);

}  // namespace lakefed
