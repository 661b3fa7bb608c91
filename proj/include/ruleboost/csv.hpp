#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruleboost::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, or -1.
  int ColumnIndex(const std::string& name) const;
};

// Parses comma-separated text with a header row. Quoted fields may contain
// commas, doubled quotes and newlines. A UTF-8 BOM is skipped. Throws
// InputError with the line number when a row's width differs from the header.
Table Parse(std::istream& in, const std::string& source_name);
Table ReadFile(const std::string& path);

std::string Quote(const std::string& field);
void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace ruleboost::csv
