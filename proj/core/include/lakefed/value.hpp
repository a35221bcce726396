#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "lakefed/error.hpp"

namespace lakefed {

/// A runtime value. The engine knows two types only: 64-bit integers and text.
/// RDF literals map to TEXT, numeric datatypes to INT; IRIs are TEXT.
using Value = std::variant<int64_t, std::string>;

inline bool is_int(const Value& v) { return v.index() == 0; }
inline bool is_text(const Value& v) { return v.index() == 1; }

/// Renders a value the way the CSV loader and N-Triples loader accept it back.
std::string value_to_string(const Value& v);

/// Three-way comparison used everywhere values are ordered: INT numerically,
/// TEXT byte-wise. Mixed types never meet in one column; comparing them throws.
int compare_values(const Value& a, const Value& b);

/// Filter comparison operators of the supported query subset.
enum class FilterOp { EQ, NEQ, LT, GT, LEQ, GEQ, CONTAINS };

std::string filter_op_symbol(FilterOp op);

/// Evaluates `value op constant`. CONTAINS is a case-insensitive substring
/// test on TEXT; EQ/NEQ are exact (case-sensitive for TEXT); the ordering
/// operators require both sides to have the same type.
bool eval_filter_op(const Value& value, FilterOp op, const Value& constant);

/// Case-insensitive ASCII substring search.
bool contains_ci(const std::string& haystack, const std::string& needle);

/// A solution mapping: variable name (without '?') to value.
/// std::map keeps serialization deterministic.
using Binding = std::map<std::string, Value>;

std::string binding_to_string(const Binding& b);

}  // namespace lakefed
