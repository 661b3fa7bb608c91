#pragma once

#include <string>

#include "json.hpp"

namespace ruleboost::io {

using Json = nlohmann::json;

// Serializes `doc` with floats at 17 significant digits (non-finite values
// become null). Object keys keep nlohmann's sorted order, so the output is a
// pure function of the document. indent < 0 yields a single line; containers
// nested deeper than `pretty_depth` are written on one line.
std::string Dump(const Json& doc, int indent = 2, int pretty_depth = 64);

std::string ReadText(const std::string& path);
void WriteText(const std::string& path, const std::string& text);
Json ReadJson(const std::string& path);

// Lowercase hex SHA-256 of `bytes`.
std::string Sha256Hex(const std::string& bytes);

}  // namespace ruleboost::io
