#include "ramseylab/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "ramseylab/errors.hpp"

namespace ramseylab {

namespace {

void escape_into(const std::string& s, std::string& out) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

std::string format_double(double v) {
  if (std::isfinite(v)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
  }
  return v > 0 ? "\"inf\"" : "\"-inf\"";
}

void dump(const nlohmann::json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::null: out += "null"; break;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case nlohmann::json::value_t::string:
      escape_into(j.get<std::string>(), out);
      break;
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump(item, indent + 1, out);
      }
      out += "\n" + pad + "]";
      break;
    }
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        escape_into(it.key(), out);
        out += ": ";
        dump(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      break;
    }
    default:
      throw Error("canonical_json: unsupported value type");
  }
}

std::string scalar_text(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return "null";
    case nlohmann::json::value_t::boolean: return j.get<bool>() ? "true" : "false";
    case nlohmann::json::value_t::number_integer:
      return std::to_string(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return std::to_string(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", v);
        return buf;
      }
      return v > 0 ? "inf" : "-inf";
    }
    case nlohmann::json::value_t::string: return j.get<std::string>();
    default: throw Error("flat_tsv: not a scalar");
  }
}

void flatten(const nlohmann::json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& item : j)
      flatten(item, path + "." + std::to_string(i++), out);
  } else {
    out += path + "\t" + scalar_text(j) + "\n";
  }
}

}  // namespace

std::string canonical_json(const nlohmann::json& body) {
  std::string out;
  dump(body, 0, out);
  out.push_back('\n');
  return out;
}

std::string flat_tsv(const nlohmann::json& body) {
  std::string out;
  flatten(body, "", out);
  return out;
}

std::string render_tsv(const Table& t) {
  std::string out;
  auto row_out = [&out](const std::vector<std::string>& row) {
    bool first = true;
    for (const auto& cell : row) {
      if (!first) out.push_back('\t');
      first = false;
      out += cell;
    }
    out.push_back('\n');
  };
  row_out(t.header);
  for (const auto& row : t.rows) row_out(row);
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ramseylab
