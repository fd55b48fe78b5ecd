#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ramseylab {

// Engine version: part of every cache key, so bumping it invalidates all
// stored entries.
inline constexpr const char* kEngineVersion = "ramseylab-0.1.0";

// Canonical JSON rendering used for every report body and cache entry:
// object keys in sorted order, two-space indentation, finite doubles printed
// %.9f, non-finite doubles as the strings "inf"/"-inf". Byte-identical for
// equal values; ends with a newline.
std::string canonical_json(const nlohmann::json& body);

// Tab-separated rendering of a report body: scalars one per line as
// "dotted.path<TAB>value", arrays indexed numerically. Doubles %.9f.
std::string flat_tsv(const nlohmann::json& body);

// Explicit table for the degree / entropy TSV emitters.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
std::string render_tsv(const Table& t);

// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ramseylab
