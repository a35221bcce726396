#include "lakefed/sparql/ast.hpp"

#include <sstream>

namespace lakefed {

Value Term::to_value() const {
  if (kind == TermKind::Literal && datatype && *datatype == kXsdInteger) {
    return Value{static_cast<int64_t>(std::stoll(value))};
  }
  return Value{value};
}

namespace {

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string term_to_string(const Term& t) {
  switch (t.kind) {
    case TermKind::Variable:
      return "?" + t.value;
    case TermKind::IRI:
      return "<" + t.value + ">";
    case TermKind::Literal:
      if (t.datatype && *t.datatype == kXsdInteger) return t.value;
      if (t.datatype) return "\"" + escape_literal(t.value) + "\"^^<" + *t.datatype + ">";
      return "\"" + escape_literal(t.value) + "\"";
  }
  return "";
}

std::string serialize_query(const Query& q) {
  std::ostringstream out;
  for (const auto& [prefix, iri] : q.prefixes) {
    out << "PREFIX " << prefix << ": <" << iri << ">\n";
  }
  out << "SELECT ";
  if (q.distinct) out << "DISTINCT ";
  for (const auto& v : q.projection) out << "?" << v << " ";
  out << "WHERE {\n";
  for (const auto& p : q.patterns) {
    out << "  " << term_to_string(p.subject) << " " << term_to_string(p.predicate) << " "
        << term_to_string(p.object) << " .\n";
  }
  for (const auto& f : q.filters) {
    if (f.op == FilterOp::CONTAINS) {
      out << "  FILTER(CONTAINS(?" << f.variable << ", " << term_to_string(f.constant) << ")) .\n";
    } else {
      out << "  FILTER(?" << f.variable << " " << filter_op_symbol(f.op) << " "
          << term_to_string(f.constant) << ") .\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lakefed
