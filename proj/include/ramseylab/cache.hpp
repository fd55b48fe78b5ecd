#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ramseylab {

// On-disk memoization of report bodies, content-addressed by the engine
// version and a canonical input signature. One JSON file per entry, written
// atomically (temp file + rename). Corrupt or out-of-date entries are
// ignored and overwritten by the next store; warnings go to the given
// stream.
class ReportCache {
 public:
  // dir is created on first store. warn receives one line per anomaly.
  ReportCache(std::string dir, std::ostream& warn);

  static std::string key_of(const std::string& signature);

  // Body bytes for a fresh entry with this exact signature and the current
  // engine version; nullopt (with a warning when the entry exists but is
  // unusable) otherwise.
  std::optional<std::string> lookup(const std::string& signature) const;

  // argv is the canonical re-runnable command line (no cache/thread flags).
  void store(const std::string& signature, const std::vector<std::string>& argv,
             const std::string& body) const;

  struct GcStats {
    int removed = 0;
    int kept = 0;
    std::uint64_t kept_bytes = 0;
  };
  // Removes entries older than max_age_days (0 = no age bound), then the
  // oldest entries until the directory fits max_mb (0 = no size bound).
  GcStats gc(double max_mb, double max_age_days) const;

  struct VerifyOutcome {
    int checked = 0;
    int matched = 0;
    int mismatched = 0;
    int errors = 0;
    std::vector<std::string> details;  // one line per problem entry
  };
  // Re-runs up to `sample` stored command lines (deterministic seeded choice)
  // through `rerun` and byte-compares the produced body with the stored one.
  VerifyOutcome verify(
      int sample,
      const std::function<std::optional<std::string>(const std::vector<std::string>&)>&
          rerun) const;

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::ostream* warn_;
};

}  // namespace ramseylab
