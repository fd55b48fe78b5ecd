#include <doctest.h>

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramseylab/cache.hpp"
#include "ramseylab/errors.hpp"
#include "ramseylab/report.hpp"

using namespace ramseylab;
namespace fs = std::filesystem;

namespace {

// Fresh empty directory per test case.
fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("ramseylab-cache-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
}

void age_file(const fs::path& p, int days) {
  const auto stamp =
      fs::file_time_type::clock::now() -
      std::chrono::duration_cast<fs::file_time_type::duration>(
          std::chrono::hours(24 * days));
  fs::last_write_time(p, stamp);
}

int entry_count(const fs::path& dir) {
  int n = 0;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.path().extension() == ".json") ++n;
  return n;
}

}  // namespace

TEST_CASE("keys derive from the engine version plus the signature") {
  CHECK(ReportCache::key_of("sig") ==
        fnv1a_hex(std::string(kEngineVersion) + "\nsig"));
  CHECK(ReportCache::key_of("sig") != ReportCache::key_of("sig2"));
  CHECK(ReportCache::key_of("x").size() == 16);
}

TEST_CASE("an empty directory path is rejected") {
  std::ostringstream warn;
  CHECK_THROWS_AS(ReportCache("", warn), ValidationError);
}

TEST_CASE("store then lookup returns the body byte-for-byte") {
  const fs::path dir = temp_dir("roundtrip");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);

  const std::string sig = "{\"argv\": [\"degree\"]}\n";
  const std::string body = "{\n  \"value\": 0.500000000\n}\n";
  cache.store(sig, {"degree", "--cat", "pair"}, body);

  const auto hit = cache.lookup(sig);
  REQUIRE(hit.has_value());
  CHECK(*hit == body);
  CHECK(warn.str().empty());

  // Exactly one entry file named by the key; the temp file was renamed away.
  const std::string key = ReportCache::key_of(sig);
  CHECK(fs::exists(dir / (key + ".json")));
  CHECK_FALSE(fs::exists(dir / (key + ".tmp")));
  CHECK(entry_count(dir) == 1);

  // The entry itself is canonical JSON holding version, signature, argv, body.
  const nlohmann::json entry = nlohmann::json::parse(read_file(dir / (key + ".json")));
  CHECK(entry["version"] == kEngineVersion);
  CHECK(entry["signature"] == sig);
  CHECK(entry["argv"] == nlohmann::json::array({"degree", "--cat", "pair"}));
  CHECK(entry["body"] == body);
}

TEST_CASE("a different signature misses quietly") {
  const fs::path dir = temp_dir("miss");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig-a", {"cmd"}, "body-a");
  CHECK_FALSE(cache.lookup("sig-b").has_value());
  CHECK(warn.str().empty());

  // Lookup against a directory that does not exist is also a quiet miss.
  ReportCache empty((dir / "nowhere").string(), warn);
  CHECK_FALSE(empty.lookup("sig-a").has_value());
  CHECK(warn.str().empty());
}

TEST_CASE("re-storing the same signature overwrites the entry") {
  const fs::path dir = temp_dir("overwrite");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig", {"cmd"}, "old");
  cache.store("sig", {"cmd"}, "new");
  CHECK(cache.lookup("sig") == std::optional<std::string>("new"));
  CHECK(entry_count(dir) == 1);
}

TEST_CASE("a corrupt entry warns and recomputes instead of failing") {
  const fs::path dir = temp_dir("corrupt");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig", {"cmd"}, "body");

  const std::string key = ReportCache::key_of("sig");
  write_file(dir / (key + ".json"), "this is not json {");
  CHECK_FALSE(cache.lookup("sig").has_value());
  CHECK(warn.str().find("corrupt") != std::string::npos);
  CHECK(warn.str().find("recomputing") != std::string::npos);

  // Valid JSON with missing fields counts as corrupt too.
  write_file(dir / (key + ".json"), "{\"version\": \"x\"}");
  CHECK_FALSE(cache.lookup("sig").has_value());
}

TEST_CASE("an entry from another engine version is ignored with a warning") {
  const fs::path dir = temp_dir("version");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig", {"cmd"}, "body");

  const fs::path file = dir / (ReportCache::key_of("sig") + ".json");
  nlohmann::json entry = nlohmann::json::parse(read_file(file));
  entry["version"] = "ramseylab-0.0.0";
  write_file(file, canonical_json(entry));

  CHECK_FALSE(cache.lookup("sig").has_value());
  CHECK(warn.str().find("ramseylab-0.0.0") != std::string::npos);
  CHECK(warn.str().find("recomputing") != std::string::npos);
}

TEST_CASE("a key collision with a different stored signature is detected") {
  const fs::path dir = temp_dir("collision");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);

  nlohmann::json entry;
  entry["version"] = kEngineVersion;
  entry["signature"] = "other-signature";
  entry["argv"] = nlohmann::json::array({"cmd"});
  entry["body"] = "body";
  write_file(dir / (ReportCache::key_of("sig") + ".json"), canonical_json(entry));

  CHECK_FALSE(cache.lookup("sig").has_value());
  CHECK(warn.str().find("collision") != std::string::npos);
}

TEST_CASE("gc removes entries beyond the age bound") {
  const fs::path dir = temp_dir("gc-age");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig-1", {"cmd", "1"}, "body-1");
  cache.store("sig-2", {"cmd", "2"}, "body-2");
  cache.store("sig-3", {"cmd", "3"}, "body-3");
  age_file(dir / (ReportCache::key_of("sig-1") + ".json"), 10);
  age_file(dir / (ReportCache::key_of("sig-2") + ".json"), 10);

  const auto stats = cache.gc(0.0, 5.0);
  CHECK(stats.removed == 2);
  CHECK(stats.kept == 1);
  CHECK(entry_count(dir) == 1);
  CHECK(cache.lookup("sig-3").has_value());
  CHECK_FALSE(cache.lookup("sig-1").has_value());
}

TEST_CASE("gc trims oldest-first down to the size bound") {
  const fs::path dir = temp_dir("gc-size");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig-1", {"cmd", "1"}, "body-1");
  cache.store("sig-2", {"cmd", "2"}, "body-2");
  cache.store("sig-3", {"cmd", "3"}, "body-3");

  const fs::path f1 = dir / (ReportCache::key_of("sig-1") + ".json");
  const fs::path f2 = dir / (ReportCache::key_of("sig-2") + ".json");
  const fs::path f3 = dir / (ReportCache::key_of("sig-3") + ".json");
  age_file(f1, 3);  // oldest
  age_file(f2, 2);
  age_file(f3, 1);

  const auto s2 = static_cast<std::uint64_t>(fs::file_size(f2));
  const auto s3 = static_cast<std::uint64_t>(fs::file_size(f3));
  // Bound admits the two newest entries but not all three.
  const double max_mb = static_cast<double>(s2 + s3 + 16) / (1024.0 * 1024.0);

  const auto stats = cache.gc(max_mb, 0.0);
  CHECK(stats.removed == 1);
  CHECK(stats.kept == 2);
  CHECK(stats.kept_bytes == s2 + s3);
  CHECK_FALSE(fs::exists(f1));
  CHECK(fs::exists(f2));
  CHECK(fs::exists(f3));
}

TEST_CASE("gc with no bounds keeps everything and reports totals") {
  const fs::path dir = temp_dir("gc-none");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig-1", {"cmd"}, "body-1");
  cache.store("sig-2", {"cmd"}, "body-2");

  const auto stats = cache.gc(0.0, 0.0);
  CHECK(stats.removed == 0);
  CHECK(stats.kept == 2);
  CHECK(stats.kept_bytes > 0);
}

TEST_CASE("verify re-runs stored command lines and byte-compares bodies") {
  const fs::path dir = temp_dir("verify");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  cache.store("sig-a", {"cmd", "a"}, "body-a");
  cache.store("sig-b", {"cmd", "b"}, "body-b");
  cache.store("sig-c", {"cmd", "c"}, "body-c");

  SUBCASE("all entries match a faithful re-run") {
    const auto out = cache.verify(0, [](const std::vector<std::string>& argv) {
      return std::optional<std::string>("body-" + argv.at(1));
    });
    CHECK(out.checked == 3);
    CHECK(out.matched == 3);
    CHECK(out.mismatched == 0);
    CHECK(out.errors == 0);
    CHECK(out.details.empty());
  }

  SUBCASE("a drifted body is reported as a mismatch") {
    const auto out = cache.verify(0, [](const std::vector<std::string>& argv) {
      if (argv.at(1) == "b") return std::optional<std::string>("body-b-drifted");
      return std::optional<std::string>("body-" + argv.at(1));
    });
    CHECK(out.checked == 3);
    CHECK(out.matched == 2);
    CHECK(out.mismatched == 1);
    REQUIRE(out.details.size() == 1);
    CHECK(out.details[0].find("differs") != std::string::npos);
    CHECK(out.details[0].find(ReportCache::key_of("sig-b")) != std::string::npos);
  }

  SUBCASE("a command that fails to re-run counts as an error") {
    const auto out = cache.verify(0, [](const std::vector<std::string>& argv) {
      if (argv.at(1) == "c") return std::optional<std::string>();
      return std::optional<std::string>("body-" + argv.at(1));
    });
    CHECK(out.checked == 3);
    CHECK(out.matched == 2);
    CHECK(out.errors == 1);
    REQUIRE(out.details.size() == 1);
    CHECK(out.details[0].find("failed to re-run") != std::string::npos);
  }

  SUBCASE("a corrupt entry is an error and is never re-run") {
    write_file(dir / (ReportCache::key_of("sig-a") + ".json"), "garbage");
    int calls = 0;
    const auto out = cache.verify(0, [&](const std::vector<std::string>& argv) {
      ++calls;
      return std::optional<std::string>("body-" + argv.at(1));
    });
    CHECK(out.checked == 2);
    CHECK(out.matched == 2);
    CHECK(out.errors == 1);
    CHECK(calls == 2);
    REQUIRE(out.details.size() == 1);
    CHECK(out.details[0].find("corrupt") != std::string::npos);
  }
}

TEST_CASE("verify sampling is deterministic") {
  const fs::path dir = temp_dir("verify-sample");
  std::ostringstream warn;
  ReportCache cache(dir.string(), warn);
  for (int i = 0; i < 6; ++i)
    cache.store("sig-" + std::to_string(i), {"cmd", std::to_string(i)},
                "body-" + std::to_string(i));

  auto run_once = [&](std::vector<std::string>& seen) {
    return cache.verify(2, [&](const std::vector<std::string>& argv) {
      seen.push_back(argv.at(1));
      return std::optional<std::string>("body-" + argv.at(1));
    });
  };
  std::vector<std::string> seen1, seen2;
  const auto out1 = run_once(seen1);
  const auto out2 = run_once(seen2);
  CHECK(out1.checked == 2);
  CHECK(out1.matched == 2);
  CHECK(out2.checked == 2);
  CHECK(seen1.size() == 2);
  CHECK(seen1 == seen2);
}
