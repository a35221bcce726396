#pragma once

#include <string>
#include <vector>

namespace lakefed {

/// Minimal CSV support: comma separator, double-quote quoting with ""
/// escapes, first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

std::string csv_quote(const std::string& field);
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace lakefed
