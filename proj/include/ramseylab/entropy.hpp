#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramseylab/numbers.hpp"
#include "ramseylab/partition.hpp"
#include "ramseylab/ramsey.hpp"
#include "ramseylab/structures.hpp"

namespace ramseylab {

struct EntropyConfig {
  EntropyKind kind = EntropyKind::boltzmann;
  EssentialMode mode;  // literal, or graded(colors); colors == 0 saturates
  std::uint64_t bell_budget = kDefaultBellBudget;
};

struct PhiReport {
  ExtReal value = ExtReal::of(0.0);
  std::string route;          // "essential-search" or "log-degree"
  std::string argmax_middle;  // middle object attaining the sup (search route)
};

// sup over middle objects above the pattern of the minimum entropy over
// essential partitions of the subobject classes. With Boltzmann entropy in a
// saturated mode, a search that exceeds the partition budget falls back to
// the log of the exact degree (the two routes agree — tested); Shannon or an
// explicit palette propagate the budget error instead.
PhiReport phi_finite(const Category& cat, int pattern, const EntropyConfig& cfg);

struct RamseyEntropyReport {
  ExtReal value = ExtReal::infinity();
  std::vector<std::pair<std::string, ExtReal>> phi;  // per upset object, in order
  std::string route;  // "essential-search", "log-degree", or "oracle"
  std::string scope;
  std::string argmin;  // upset object attaining the min
};

// min over objects above the given one of phi; finite categories attain the
// minimum. Every computation re-asserts value <= phi(A) for each A scanned.
RamseyEntropyReport ramsey_entropy_finite(const Category& cat, int object,
                                          const EntropyConfig& cfg);

// Log-degree route over the truncated universe of a structure class
// (Boltzmann only): scans the upset of the object within the universe and
// takes the least log-degree. An upper bound of the true infimum;
// stabilization is not guaranteed by the tool.
RamseyEntropyReport ramsey_entropy_oracle(StructureClass cls, const Structure& object,
                                          int truncation, EntropyKind kind);

// Product of two oracle-backed classes: degrees multiply, so the entropies
// add. Cross-checked internally against brute-force product degrees on a
// small truncation before the value is returned.
RamseyEntropyReport ramsey_entropy_oracle_product(StructureClass cls1,
                                                  const Structure& x1,
                                                  StructureClass cls2,
                                                  const Structure& x2, int truncation,
                                                  EntropyKind kind);

// Per corpus object: Boltzmann phi via the essential search equals the log
// of the exact degree; per object, the Shannon-based entropy never exceeds
// the Boltzmann-based one.
SuiteReport boltzmann_identity_check(const std::vector<CorpusCategory>& corpus,
                                     std::uint64_t bell_budget = kDefaultBellBudget);

// Validates, with absolute tolerance 1e-9: monotonicity along arrows; the
// log-degree bound; zero on subramsey objects; invariance under object
// isomorphism; the degree/entropy finiteness equivalence and the
// subramsey <=> zero equivalence on amalgamation categories; Shannon
// subadditivity and Boltzmann additivity on the given product pairs;
// concatenation-additivity on state tuples up to length 3; the structural
// fact that a finite all-mono category has zero entropy everywhere (an
// engine-consistency check); and the oracle route's fixed instances,
// including antitonicity in the truncation bound.
SuiteReport entropy_theorem_suite(const std::vector<CorpusCategory>& corpus,
                                  const std::vector<std::pair<int, int>>& product_pairs,
                                  std::uint64_t bell_budget = kDefaultBellBudget);

}  // namespace ramseylab
