#include "lakefed/value.hpp"

#include <algorithm>
#include <cctype>

namespace lakefed {

std::string value_to_string(const Value& v) {
  if (is_int(v)) return std::to_string(std::get<int64_t>(v));
  return std::get<std::string>(v);
}

int compare_values(const Value& a, const Value& b) {
  if (a.index() != b.index()) {
    throw TypeMismatch("cannot order " + value_to_string(a) + " against " + value_to_string(b));
  }
  if (is_int(a)) {
    const auto x = std::get<int64_t>(a), y = std::get<int64_t>(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  const auto& x = std::get<std::string>(a);
  const auto& y = std::get<std::string>(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::string filter_op_symbol(FilterOp op) {
  switch (op) {
    case FilterOp::EQ: return "=";
    case FilterOp::NEQ: return "!=";
    case FilterOp::LT: return "<";
    case FilterOp::GT: return ">";
    case FilterOp::LEQ: return "<=";
    case FilterOp::GEQ: return ">=";
    case FilterOp::CONTAINS: return "CONTAINS";
  }
  return "?";
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return true;
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [&](char a, char b) { return lower(a) == lower(b); });
  return it != haystack.end();
}

bool eval_filter_op(const Value& value, FilterOp op, const Value& constant) {
  switch (op) {
    case FilterOp::EQ:
      return value.index() == constant.index() && compare_values(value, constant) == 0;
    case FilterOp::NEQ:
      return value.index() != constant.index() || compare_values(value, constant) != 0;
    case FilterOp::CONTAINS: {
      if (!is_text(value) || !is_text(constant)) {
        throw TypeMismatch("CONTAINS requires text operands");
      }
      return contains_ci(std::get<std::string>(value), std::get<std::string>(constant));
    }
    case FilterOp::LT: return compare_values(value, constant) < 0;
    case FilterOp::GT: return compare_values(value, constant) > 0;
    case FilterOp::LEQ: return compare_values(value, constant) <= 0;
    case FilterOp::GEQ: return compare_values(value, constant) >= 0;
  }
  return false;
}

std::string binding_to_string(const Binding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : b) {
    if (!first) out += ", ";
    first = false;
    out += "?" + var + "=" + (is_text(value) ? "'" + std::get<std::string>(value) + "'"
                                             : value_to_string(value));
  }
  out += "}";
  return out;
}

}  // namespace lakefed
