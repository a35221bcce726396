#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lakefed {

struct StarShapedSubQuery;  // decompose.hpp

/// Abstract description of one class of entities in a source: the predicates
/// its instances carry and links to other classes.
struct RdfMoleculeTemplate {
  std::string class_iri;
  std::set<std::string> predicates;
  std::string source_id;
  /// (predicate, target class) pairs; each predicate is a member of `predicates`.
  std::vector<std::pair<std::string, std::string>> inter_links;
  /// Number of instances, used for join ordering. Sources without relational
  /// statistics (RDF) have no other cardinality information.
  uint64_t instance_count = 1000;
};

/// One foreign-key step: JOIN to_table ON from_table.from_column = to_table.to_column.
struct JoinHop {
  std::string from_table;
  std::string from_column;
  std::string to_table;
  std::string to_column;

  bool operator==(const JoinHop&) const = default;
};

/// Where one predicate's objects live, as a column reached from the root
/// table via foreign keys. An empty join_path means a column on the root.
struct PredicateMapping {
  std::string table;
  std::string column;
  std::vector<JoinHop> join_path;
};

/// Relational backing of one class: subjects are the primary keys of the
/// root table, predicates map to columns at most two foreign-key hops away.
struct RelationalMapping {
  std::string class_iri;
  std::string source_id;
  std::string root_table;
  std::string subject_column;
  std::map<std::string, PredicateMapping> predicate_map;
};

enum class ColumnType { INT, TEXT };

/// Physical metadata of one column, as declared by the catalog file. This is
/// also the schema the CSV loader trusts for column types.
struct ColumnStats {
  std::string source_id;
  std::string table;
  std::string column;
  ColumnType type = ColumnType::TEXT;
  bool indexed = false;
  bool is_primary_key = false;
  std::optional<std::pair<std::string, std::string>> foreign_key;  // (target table, column)
  uint64_t row_count = 0;
  uint64_t distinct_count = 0;
  double max_value_frequency = 0.0;  // in [0,1]
};

enum class SourceModel { RELATIONAL, RDF };

struct Catalog {
  std::vector<RdfMoleculeTemplate> molecules;
  std::vector<RelationalMapping> mappings;
  std::vector<ColumnStats> statistics;
  std::map<std::string, SourceModel> source_models;
  /// Data location per source, relative to base_dir: a directory of CSV files
  /// for relational sources, a triples file for RDF sources.
  std::map<std::string, std::string> source_data;
  std::string base_dir;

  const RelationalMapping* find_mapping(const std::string& source_id,
                                        const std::string& class_iri) const;
  const RdfMoleculeTemplate* find_molecule(const std::string& source_id,
                                           const std::string& class_iri) const;
  const ColumnStats* find_stats(const std::string& source_id, const std::string& table,
                                const std::string& column) const;
  std::vector<const ColumnStats*> table_stats(const std::string& source_id,
                                              const std::string& table) const;
};

/// Loads and eagerly validates a catalog file.
/// Throws ParseError, InvariantViolation, or DanglingReference.
Catalog load_catalog(const std::string& path);

/// Same as load_catalog but from an in-memory JSON document.
Catalog parse_catalog(const std::string& json_text, const std::string& base_dir = ".");

/// All (source_id, class_iri) whose molecule contains predicate p.
std::set<std::pair<std::string, std::string>> molecules_for_predicate(const Catalog& c,
                                                                      const std::string& p);

/// True iff the column is marked indexed (primary keys always are).
/// Throws UnknownColumn.
bool is_indexed(const Catalog& c, const std::string& source_id, const std::string& table,
                const std::string& column);

/// Fixed selectivities for predicates the statistics cannot answer.
struct SelectivityConfig {
  double range = 1.0 / 3.0;    // LT, GT, LEQ, GEQ
  double contains = 1.0 / 10.0;
  /// Equality on a column without distinct-count statistics (RDF sources).
  double unknown_eq = 1.0 / 10.0;
};

/// Cardinality estimate for one star: root row count times one selectivity
/// factor per filter. Constant objects in patterns count as equality filters.
/// Throws UnknownMapping if the star's source is not described by the catalog.
uint64_t estimate_cardinality(const Catalog& c, const StarShapedSubQuery& ssq,
                              const SelectivityConfig& sel = {});

}  // namespace lakefed
