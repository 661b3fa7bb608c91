#include "ruleboost/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ruleboost/error.hpp"

namespace ruleboost::csv {

int Table::ColumnIndex(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

// Reads one record; returns false at end of input.
bool ReadRecord(std::istream& in, std::vector<std::string>& fields,
                std::size_t& line, const std::string& source) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  const std::size_t start_line = line;
  for (;;) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      if (quoted) {
        throw InputError(source + ": line " + std::to_string(start_line) +
                         ": unterminated quoted field");
      }
      fields.push_back(std::move(field));
      ++line;
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (ch == '\r') {
      // swallowed; CRLF endings
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      ++line;
      return true;
    } else if (ch == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else {
      field.push_back(ch);
    }
  }
}

}  // namespace

Table Parse(std::istream& in, const std::string& source_name) {
  Table table;
  if (in.peek() == 0xEF) {
    char bom[3];
    in.read(bom, 3);
  }
  std::size_t line = 1;
  std::vector<std::string> fields;
  if (!ReadRecord(in, table.header, line, source_name)) {
    throw InputError(source_name + ": empty file, expected a header row");
  }
  while (ReadRecord(in, fields, line, source_name)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != table.header.size()) {
      throw InputError(source_name + ": line " + std::to_string(line - 1) +
                       ": expected " + std::to_string(table.header.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

Table ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return Parse(in, path);
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << Quote(fields[i]);
  }
  out << '\n';
}

}  // namespace ruleboost::csv
