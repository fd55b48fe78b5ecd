#include "ramseylab/cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ramseylab/errors.hpp"
#include "ramseylab/report.hpp"

namespace fs = std::filesystem;

namespace ramseylab {

namespace {

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Entry {
  std::string version;
  std::string signature;
  std::vector<std::string> argv;
  std::string body;
};

std::optional<Entry> parse_entry(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("version") || !j.contains("signature") || !j.contains("argv") ||
      !j.contains("body"))
    return std::nullopt;
  if (!j["version"].is_string() || !j["signature"].is_string() ||
      !j["argv"].is_array() || !j["body"].is_string())
    return std::nullopt;
  Entry e;
  e.version = j["version"].get<std::string>();
  e.signature = j["signature"].get<std::string>();
  for (const auto& a : j["argv"]) {
    if (!a.is_string()) return std::nullopt;
    e.argv.push_back(a.get<std::string>());
  }
  e.body = j["body"].get<std::string>();
  return e;
}

std::vector<fs::path> entry_files(const std::string& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& de : fs::directory_iterator(dir, ec))
    if (de.is_regular_file() && de.path().extension() == ".json")
      files.push_back(de.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

ReportCache::ReportCache(std::string dir, std::ostream& warn)
    : dir_(std::move(dir)), warn_(&warn) {
  if (dir_.empty()) throw ValidationError("cache: empty directory path");
}

std::string ReportCache::key_of(const std::string& signature) {
  return fnv1a_hex(std::string(kEngineVersion) + "\n" + signature);
}

std::optional<std::string> ReportCache::lookup(const std::string& signature) const {
  const std::string key = key_of(signature);
  const fs::path file = fs::path(dir_) / (key + ".json");
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  const auto text = slurp(file);
  if (!text) {
    (*warn_) << "cache: unreadable entry " << key << " — recomputing\n";
    return std::nullopt;
  }
  const auto entry = parse_entry(*text);
  if (!entry) {
    (*warn_) << "cache: corrupt entry " << key << " — recomputing\n";
    return std::nullopt;
  }
  if (entry->version != kEngineVersion) {
    (*warn_) << "cache: entry " << key << " from version " << entry->version
             << " — recomputing\n";
    return std::nullopt;
  }
  if (entry->signature != signature) {
    (*warn_) << "cache: signature collision on " << key << " — recomputing\n";
    return std::nullopt;
  }
  return entry->body;
}

void ReportCache::store(const std::string& signature,
                        const std::vector<std::string>& argv,
                        const std::string& body) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const std::string key = key_of(signature);
  nlohmann::json j;
  j["version"] = kEngineVersion;
  j["signature"] = signature;
  j["argv"] = argv;
  j["body"] = body;
  const std::string text = canonical_json(j);
  const fs::path final_path = fs::path(dir_) / (key + ".json");
  const fs::path tmp_path = fs::path(dir_) / (key + ".tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      (*warn_) << "cache: cannot write " << tmp_path.string() << "\n";
      return;
    }
    out << text;
    if (!out.good()) {
      (*warn_) << "cache: short write on " << tmp_path.string() << "\n";
      return;
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) (*warn_) << "cache: rename failed: " << ec.message() << "\n";
}

ReportCache::GcStats ReportCache::gc(double max_mb, double max_age_days) const {
  GcStats stats;
  std::vector<std::pair<fs::file_time_type, fs::path>> files;
  for (const auto& p : entry_files(dir_)) {
    std::error_code ec;
    const auto t = fs::last_write_time(p, ec);
    if (!ec) files.emplace_back(t, p);
  }
  std::sort(files.begin(), files.end());  // oldest first

  std::error_code ec;
  if (max_age_days > 0) {
    const auto cutoff = fs::file_time_type::clock::now() -
                        std::chrono::duration_cast<fs::file_time_type::duration>(
                            std::chrono::duration<double, std::ratio<86400>>(max_age_days));
    std::vector<std::pair<fs::file_time_type, fs::path>> kept;
    for (const auto& [t, p] : files) {
      if (t < cutoff) {
        fs::remove(p, ec);
        ++stats.removed;
      } else {
        kept.push_back({t, p});
      }
    }
    files = std::move(kept);
  }

  std::uint64_t total = 0;
  std::vector<std::uint64_t> sizes;
  for (const auto& [t, p] : files) {
    const auto s = fs::file_size(p, ec);
    sizes.push_back(ec ? 0 : static_cast<std::uint64_t>(s));
    total += sizes.back();
  }
  if (max_mb > 0) {
    const auto bound = static_cast<std::uint64_t>(max_mb * 1024.0 * 1024.0);
    std::size_t i = 0;
    while (total > bound && i < files.size()) {
      fs::remove(files[i].second, ec);
      total -= sizes[i];
      ++stats.removed;
      ++i;
    }
    files.erase(files.begin(), files.begin() + static_cast<std::ptrdiff_t>(i));
  }
  stats.kept = static_cast<int>(files.size());
  stats.kept_bytes = total;
  return stats;
}

ReportCache::VerifyOutcome ReportCache::verify(
    int sample,
    const std::function<std::optional<std::string>(const std::vector<std::string>&)>&
        rerun) const {
  VerifyOutcome out;
  std::vector<fs::path> files = entry_files(dir_);
  if (sample > 0 && static_cast<std::size_t>(sample) < files.size()) {
    std::mt19937_64 rng(0xCACE);
    std::shuffle(files.begin(), files.end(), rng);
    files.resize(static_cast<std::size_t>(sample));
    std::sort(files.begin(), files.end());
  }
  for (const auto& p : files) {
    const std::string key = p.stem().string();
    const auto text = slurp(p);
    const auto entry = text ? parse_entry(*text) : std::nullopt;
    if (!entry) {
      ++out.errors;
      out.details.push_back(key + ": unreadable or corrupt");
      continue;
    }
    if (entry->version != kEngineVersion) {
      ++out.errors;
      out.details.push_back(key + ": stored under version " + entry->version);
      continue;
    }
    ++out.checked;
    const auto fresh = rerun(entry->argv);
    if (!fresh) {
      ++out.errors;
      out.details.push_back(key + ": stored command failed to re-run");
      continue;
    }
    if (*fresh == entry->body) {
      ++out.matched;
    } else {
      ++out.mismatched;
      out.details.push_back(key + ": recomputed body differs from stored body");
    }
  }
  return out;
}

}  // namespace ramseylab
