#pragma once

#include <string>

#include "lakefed/sparql/ast.hpp"

namespace lakefed {

/// Parses the supported SPARQL subset: PREFIX declarations, SELECT (+DISTINCT)
/// over a basic graph pattern with conjunctive FILTERs. Prefixed names are
/// expanded to absolute IRIs; pattern order is preserved as written.
///
/// Throws SyntaxError, UnknownPrefix, or UnsupportedFeature (OPTIONAL, UNION,
/// variable predicates, ...).
Query parse_query(const std::string& text);

}  // namespace lakefed
