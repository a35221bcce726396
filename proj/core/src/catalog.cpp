#include "lakefed/catalog.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lakefed/decompose.hpp"
#include "lakefed/error.hpp"

namespace lakefed {

using nlohmann::json;

const RelationalMapping* Catalog::find_mapping(const std::string& source_id,
                                               const std::string& class_iri) const {
  for (const auto& m : mappings) {
    if (m.source_id == source_id && m.class_iri == class_iri) return &m;
  }
  return nullptr;
}

const RdfMoleculeTemplate* Catalog::find_molecule(const std::string& source_id,
                                                  const std::string& class_iri) const {
  for (const auto& m : molecules) {
    if (m.source_id == source_id && m.class_iri == class_iri) return &m;
  }
  return nullptr;
}

const ColumnStats* Catalog::find_stats(const std::string& source_id, const std::string& table,
                                       const std::string& column) const {
  for (const auto& s : statistics) {
    if (s.source_id == source_id && s.table == table && s.column == column) return &s;
  }
  return nullptr;
}

std::vector<const ColumnStats*> Catalog::table_stats(const std::string& source_id,
                                                     const std::string& table) const {
  std::vector<const ColumnStats*> out;
  for (const auto& s : statistics) {
    if (s.source_id == source_id && s.table == table) out.push_back(&s);
  }
  return out;
}

namespace {

std::string require_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(where + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

void validate_catalog(const Catalog& c) {
  std::set<std::string> source_ids;
  for (const auto& [id, model] : c.source_models) {
    (void)model;
    if (!source_ids.insert(id).second) {
      throw InvariantViolation("duplicate source id '" + id + "'");
    }
  }

  std::set<std::string> known_classes;
  for (const auto& m : c.molecules) known_classes.insert(m.class_iri);

  for (const auto& m : c.molecules) {
    const std::string where = "molecule " + m.class_iri + "@" + m.source_id;
    if (!c.source_models.count(m.source_id)) {
      throw DanglingReference(where + " names unknown source");
    }
    if (m.predicates.empty()) {
      throw InvariantViolation(where + " has an empty predicate set");
    }
    for (const auto& [pred, target] : m.inter_links) {
      if (!m.predicates.count(pred)) {
        throw InvariantViolation(where + ": link predicate " + pred +
                                 " is not in the predicate set");
      }
      if (!known_classes.count(target)) {
        throw DanglingReference(where + ": link target class " + target + " is not declared");
      }
    }
  }

  for (const auto& s : c.statistics) {
    const std::string where = "statistics for " + s.source_id + "." + s.table + "." + s.column;
    if (!c.source_models.count(s.source_id)) {
      throw DanglingReference(where + ": unknown source");
    }
    if (s.distinct_count > s.row_count) {
      throw InvariantViolation(where + ": distinct_count exceeds row_count");
    }
    if (s.max_value_frequency < 0.0 || s.max_value_frequency > 1.0) {
      throw InvariantViolation(where + ": max_value_frequency outside [0,1]");
    }
    if (s.is_primary_key && !s.indexed) {
      throw InvariantViolation(where + ": primary key column is not indexed");
    }
    if (s.foreign_key) {
      if (!std::any_of(c.statistics.begin(), c.statistics.end(), [&](const ColumnStats& t) {
            return t.source_id == s.source_id && t.table == s.foreign_key->first &&
                   t.column == s.foreign_key->second;
          })) {
        throw DanglingReference(where + ": foreign key targets unknown column " +
                                s.foreign_key->first + "." + s.foreign_key->second);
      }
    }
  }

  for (const auto& m : c.mappings) {
    const std::string where = "mapping " + m.class_iri + "@" + m.source_id;
    auto require_column = [&](const std::string& table, const std::string& column) {
      if (!c.find_stats(m.source_id, table, column)) {
        throw DanglingReference(where + " references unknown column " + table + "." + column);
      }
    };
    require_column(m.root_table, m.subject_column);
    const ColumnStats* subject = c.find_stats(m.source_id, m.root_table, m.subject_column);
    if (!subject->is_primary_key) {
      throw InvariantViolation(where + ": subject column " + m.root_table + "." +
                               m.subject_column + " is not the primary key");
    }
    for (const auto& [pred, pm] : m.predicate_map) {
      if (pm.join_path.size() > 2) {
        throw InvariantViolation(where + ": join path of " + pred + " spans more than 3 tables");
      }
      std::string at = m.root_table;
      for (const auto& hop : pm.join_path) {
        if (hop.from_table != at) {
          throw InvariantViolation(where + ": join path of " + pred +
                                   " does not chain from the root table");
        }
        require_column(hop.from_table, hop.from_column);
        require_column(hop.to_table, hop.to_column);
        at = hop.to_table;
      }
      if (pm.table != at) {
        throw InvariantViolation(where + ": predicate " + pred + " maps to table " + pm.table +
                                 " but its join path ends at " + at);
      }
      require_column(pm.table, pm.column);
    }
  }

  for (const auto& m : c.molecules) {
    auto model = c.source_models.at(m.source_id);
    if (model == SourceModel::RELATIONAL && !c.find_mapping(m.source_id, m.class_iri)) {
      throw InvariantViolation("relational molecule " + m.class_iri + "@" + m.source_id +
                               " has no relational mapping");
    }
  }
}

Catalog catalog_from_json(const json& doc, const std::string& base_dir) {
  Catalog c;
  c.base_dir = base_dir;
  if (!doc.is_object()) throw ParseError("catalog root must be an object");
  for (const char* key : {"sources", "molecules", "mappings", "statistics"}) {
    if (!doc.contains(key)) throw ParseError(std::string("catalog is missing '") + key + "'");
  }

  for (const auto& s : doc["sources"]) {
    const std::string id = require_string(s, "id", "source");
    const std::string model = require_string(s, "model", "source " + id);
    if (model == "relational") {
      c.source_models[id] = SourceModel::RELATIONAL;
    } else if (model == "rdf") {
      c.source_models[id] = SourceModel::RDF;
    } else {
      throw ParseError("source " + id + ": unknown model '" + model + "'");
    }
    if (s.contains("data")) c.source_data[id] = s["data"].get<std::string>();
  }

  for (const auto& j : doc["molecules"]) {
    RdfMoleculeTemplate m;
    m.class_iri = require_string(j, "class", "molecule");
    m.source_id = require_string(j, "source", "molecule " + m.class_iri);
    if (!j.contains("predicates") || !j["predicates"].is_array()) {
      throw ParseError("molecule " + m.class_iri + ": missing predicates array");
    }
    for (const auto& p : j["predicates"]) m.predicates.insert(p.get<std::string>());
    if (j.contains("links")) {
      for (const auto& l : j["links"]) {
        m.inter_links.emplace_back(require_string(l, "predicate", "link"),
                                   require_string(l, "target_class", "link"));
      }
    }
    if (j.contains("instance_count")) m.instance_count = j["instance_count"].get<uint64_t>();
    c.molecules.push_back(std::move(m));
  }

  for (const auto& j : doc["mappings"]) {
    RelationalMapping m;
    m.class_iri = require_string(j, "class", "mapping");
    m.source_id = require_string(j, "source", "mapping " + m.class_iri);
    m.root_table = require_string(j, "root_table", "mapping " + m.class_iri);
    m.subject_column = require_string(j, "subject_column", "mapping " + m.class_iri);
    if (j.contains("predicates")) {
      for (const auto& [pred, pj] : j["predicates"].items()) {
        PredicateMapping pm;
        pm.table = require_string(pj, "table", "mapping " + m.class_iri + " predicate " + pred);
        pm.column = require_string(pj, "column", "mapping " + m.class_iri + " predicate " + pred);
        if (pj.contains("join_path")) {
          for (const auto& h : pj["join_path"]) {
            pm.join_path.push_back({require_string(h, "from_table", "join hop"),
                                    require_string(h, "from_column", "join hop"),
                                    require_string(h, "to_table", "join hop"),
                                    require_string(h, "to_column", "join hop")});
          }
        }
        m.predicate_map.emplace(pred, std::move(pm));
      }
    }
    c.mappings.push_back(std::move(m));
  }

  for (const auto& j : doc["statistics"]) {
    ColumnStats s;
    s.source_id = require_string(j, "source", "statistics");
    s.table = require_string(j, "table", "statistics");
    s.column = require_string(j, "column", "statistics");
    const std::string type = j.value("type", "text");
    if (type == "int") s.type = ColumnType::INT;
    else if (type == "text") s.type = ColumnType::TEXT;
    else throw ParseError("statistics " + s.table + "." + s.column + ": unknown type " + type);
    s.indexed = j.value("indexed", false);
    s.is_primary_key = j.value("primary_key", false);
    if (j.contains("foreign_key") && !j["foreign_key"].is_null()) {
      s.foreign_key = {require_string(j["foreign_key"], "table", "foreign_key"),
                       require_string(j["foreign_key"], "column", "foreign_key")};
    }
    s.row_count = j.value("row_count", 0ULL);
    s.distinct_count = j.value("distinct_count", 0ULL);
    s.max_value_frequency = j.value("max_value_frequency", 0.0);
    c.statistics.push_back(std::move(s));
  }

  validate_catalog(c);
  return c;
}

}  // namespace

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what());
  }
  return catalog_from_json(doc, std::filesystem::path(path).parent_path().string());
}

Catalog parse_catalog(const std::string& json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what());
  }
  return catalog_from_json(doc, base_dir);
}

std::set<std::pair<std::string, std::string>> molecules_for_predicate(const Catalog& c,
                                                                      const std::string& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& m : c.molecules) {
    if (m.predicates.count(p)) out.emplace(m.source_id, m.class_iri);
  }
  return out;
}

bool is_indexed(const Catalog& c, const std::string& source_id, const std::string& table,
                const std::string& column) {
  const ColumnStats* s = c.find_stats(source_id, table, column);
  if (!s) throw UnknownColumn(table, column);
  return s->indexed || s->is_primary_key;
}

uint64_t estimate_cardinality(const Catalog& c, const StarShapedSubQuery& ssq,
                              const SelectivityConfig& sel) {
  if (ssq.candidate_sources.empty()) {
    throw UnknownMapping("star " + term_to_string(ssq.subject) + " has no selected source");
  }
  const auto& [source_id, class_iri] = *ssq.candidate_sources.begin();
  const RelationalMapping* mapping = c.find_mapping(source_id, class_iri);

  double rows = 0.0;
  if (mapping) {
    const ColumnStats* subject = c.find_stats(source_id, mapping->root_table,
                                              mapping->subject_column);
    rows = static_cast<double>(subject->row_count);
  } else {
    const RdfMoleculeTemplate* molecule = c.find_molecule(source_id, class_iri);
    if (!molecule) {
      throw UnknownMapping("no mapping or molecule for " + class_iri + "@" + source_id);
    }
    rows = static_cast<double>(molecule->instance_count);
  }

  // Distinct count of the column a variable maps to; 0 when unknown.
  auto distinct_of = [&](const std::string& var) -> uint64_t {
    if (!mapping) return 0;
    if (ssq.subject.is_variable() && ssq.subject.value == var) {
      return c.find_stats(source_id, mapping->root_table, mapping->subject_column)
          ->distinct_count;
    }
    for (const auto& p : ssq.patterns) {
      if (p.object.is_variable() && p.object.value == var) {
        auto it = mapping->predicate_map.find(p.predicate.value);
        if (it == mapping->predicate_map.end()) continue;
        const ColumnStats* s = c.find_stats(source_id, it->second.table, it->second.column);
        if (s) return s->distinct_count;
      }
    }
    return 0;
  };
  auto distinct_of_predicate = [&](const std::string& pred) -> uint64_t {
    if (!mapping) return 0;
    auto it = mapping->predicate_map.find(pred);
    if (it == mapping->predicate_map.end()) return 0;
    const ColumnStats* s = c.find_stats(source_id, it->second.table, it->second.column);
    return s ? s->distinct_count : 0;
  };

  double estimate = rows;
  for (const auto& f : ssq.filters) {
    switch (f.op) {
      case FilterOp::EQ: {
        uint64_t distinct = distinct_of(f.variable);
        estimate *= distinct > 0 ? 1.0 / static_cast<double>(distinct) : sel.unknown_eq;
        break;
      }
      case FilterOp::CONTAINS:
        estimate *= sel.contains;
        break;
      case FilterOp::NEQ:
        break;  // barely selective
      default:
        estimate *= sel.range;
    }
  }
  for (const auto& p : ssq.patterns) {
    if (p.predicate.value == kRdfType) continue;  // class choice, not a predicate filter
    if (!p.object.is_variable()) {
      uint64_t distinct = distinct_of_predicate(p.predicate.value);
      estimate *= distinct > 0 ? 1.0 / static_cast<double>(distinct) : sel.unknown_eq;
    }
  }
  if (ssq.subject.is_iri()) estimate = std::min(estimate, 1.0);

  return static_cast<uint64_t>(std::llround(std::max(0.0, std::ceil(estimate))));
}

}  // namespace lakefed
