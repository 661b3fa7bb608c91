#include "ruleboost/json_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ruleboost/error.hpp"

namespace ruleboost::io {

namespace {

void AppendFloat(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out += s;
}

void DumpInto(std::string& out, const Json& j, int indent, int depth,
              int pretty_depth) {
  const bool pretty = indent >= 0 && depth < pretty_depth;
  auto newline = [&](int d) {
    if (!pretty) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        DumpInto(out, it.value(), indent, depth + 1, pretty_depth);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        DumpInto(out, v, indent, depth + 1, pretty_depth);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      AppendFloat(out, j.get<double>());
      return;
    default:
      out += j.dump(-1, ' ', false, Json::error_handler_t::strict);
  }
}

}  // namespace

std::string Dump(const Json& doc, int indent, int pretty_depth) {
  std::string out;
  DumpInto(out, doc, indent, 0, pretty_depth);
  return out;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path + "'");
}

Json ReadJson(const std::string& path) {
  const std::string text = ReadText(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw InternalError("SHA-256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace ruleboost::io
