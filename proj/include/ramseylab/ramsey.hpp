#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseylab/category.hpp"
#include "ramseylab/numbers.hpp"
#include "ramseylab/partition.hpp"
#include "ramseylab/structures.hpp"
#include "ramseylab/subobj.hpp"

namespace ramseylab {

inline constexpr std::uint64_t kDefaultBellBudget = 1000000;

// structural: colorings live on subobject classes of the pattern in the
// outer object; embedding: on the raw hom-set.
enum class ArrowKind { structural, embedding };
const char* arrow_kind_name(ArrowKind kind);
ArrowKind arrow_kind_from_name(const std::string& name);

struct ArrowQuery {
  int outer;    // C
  int middle;   // B
  int pattern;  // A
  int colors;   // k: palette size, as partitions into <= k blocks
  std::uint64_t threshold;  // t
  ArrowKind kind = ArrowKind::structural;
};

struct ArrowResult {
  bool holds = false;
  ArrowQuery query;
  int ground_size = 0;               // colored set size
  std::uint64_t partition_space = 0; // number of colorings considered
  // holds: the worst coloring (maximal min-over-arrows color count on the
  // image) and the first arrow attaining that minimum. fails: the first
  // counterexample coloring in canonical order; witness_arrow empty.
  Partition certificate = Partition::discrete(1);
  std::uint64_t certificate_colors = 0;  // its min over arrows
  std::string witness_arrow;
};

struct ArrowOptions {
  int threads = 1;
  std::uint64_t bell_budget = kDefaultBellBudget;
  bool prune_aut = false;  // skip colorings equivalent under Aut(outer)
};

// Exhaustive verdict for "every <=k coloring of the pattern copies in outer
// admits an arrow from middle whose image sees <= threshold colors".
// Counterexamples are re-verified; holds-verdicts are spot-checked against
// 100 seeded random colorings before returning.
ArrowResult arrow_check(const Category& cat, const ArrowQuery& q,
                        const ArrowOptions& opts = {});

struct WitnessResult {
  bool found = false;
  int outer = -1;  // first object (in the given order) whose arrow holds
  std::string scope;
};

// Scans candidates in the given order, skipping those the middle object
// does not reach; no claim beyond the scanned scope.
WitnessResult witness_search(const Category& cat, const std::vector<int>& candidates,
                             int middle, int pattern, int colors,
                             std::uint64_t threshold, ArrowKind kind,
                             const ArrowOptions& opts = {});

struct DegreeResult {
  ArrowKind kind;
  ExtNat value = ExtNat(1);
  int saturation_colors = 0;  // palette size at which "for all k" is decided
  std::string scope;
  std::string method;       // "scan" or "discrete-dominance"
  std::string certificate;  // worst (middle, outer, coloring) at the value
};

// Exact Ramsey degree inside a finite all-mono category:
//   max over B above the pattern of min over C above B of the worst-coloring
//   value max_Pi min_w |colors on image|.
// Palettes saturate at the largest colored-set size, so the "for all k" in
// the definition is decided finitely; max_blocks_override recomputes at a
// different palette cap (same answer expected — tested).
DegreeResult degree_exact_finite(const Category& cat, int pattern, ArrowKind kind,
                                 std::uint64_t bell_budget = kDefaultBellBudget,
                                 int max_blocks_override = 0);

struct DegreeBounds {
  ArrowKind kind;
  ExtNat lower = ExtNat(1);   // trivial floor
  ExtNat upper = ExtNat(1);   // within-scope estimate, NOT a bound for the class
  std::string scope;
  std::vector<std::string> witnesses;  // per (middle,k): witness or failure records
  std::string oracle_note;
};

// Truncated-universe degree estimate for an open structure class: for every
// middle object of size <= b_max above the pattern and every palette k <=
// k_max, the least threshold witnessed by some universe member. Honest about
// scope: values can move in either direction as the universe grows.
DegreeBounds degree_bounds_universe(StructureClass cls, const Structure& pattern,
                                    int n_max, int b_max, int k_max,
                                    ArrowKind kind = ArrowKind::structural,
                                    const ArrowOptions& opts = {});

// literal: quantify over all colorings of each candidate's classes.
// graded with colors >= 1: only colorings into <= colors blocks.
// graded with colors == 0: saturate at the largest class count in range
// (which coincides with literal inside the given range).
struct EssentialMode {
  bool literal = false;
  int colors = 0;
};

struct EssentialResult {
  bool essential = false;
  int witness = -1;  // position in the candidate range
  int colors_used = 0;  // -1 for literal (unbounded)
  std::string scope;
};

// Reusable machinery for essential-partition queries over a fixed
// (pattern, middle, candidate range): subobject sets and class maps are
// computed once.
class EssentialContext {
 public:
  EssentialContext(const Category& cat, int pattern, int middle,
                   std::vector<int> candidates,
                   std::uint64_t bell_budget = kDefaultBellBudget);

  const Category& category() const { return *cat_; }
  const SubobjectSet& base() const { return sb_; }  // (middle choose pattern)
  int pattern_object() const { return pattern_; }
  int middle_object() const { return middle_; }
  int candidate_count() const { return static_cast<int>(cands_.size()); }
  int candidate(int i) const { return cands_[static_cast<std::size_t>(i)].object; }
  int saturation_colors() const;  // largest class count over the range

  // "lambda is essential": some candidate C has, for every admissible
  // coloring of its classes, an arrow from middle whose pullback is refined
  // by lambda. Every passing instance also asserts the color-count
  // implication (image sees <= |lambda| colors) inline.
  EssentialResult check(const Partition& lambda, EssentialMode mode) const;

  struct MinResult {
    int min_block_count = 0;
    double min_entropy = 0.0;
    Partition argmin_blocks = Partition::discrete(1);   // first by (blocks, H, rgs)
    Partition argmin_entropy = Partition::discrete(1);  // true entropy minimizer
    int witness_blocks = -1;   // candidate positions
    int witness_entropy = -1;
    int colors_used = 0;
    std::string scope;
  };
  // Scans partitions of the base classes coarse-to-fine (block count, then
  // entropy, then canonical order). Boltzmann stops at the first essential
  // partition; Shannon scans all of them for the true entropy minimum.
  MinResult essential_min(EssentialMode mode, EntropyKind h) const;

 private:
  struct Candidate {
    int object;
    SubobjectSet classes;
    std::vector<std::vector<int>> class_maps;  // per arrow middle->object
    bool injective_maps = true;  // every class map above is injective
  };
  bool essential_at(const Partition& lambda, const Candidate& cand,
                    int max_blocks) const;

  const Category* cat_;
  int pattern_, middle_;
  SubobjectSet sb_;
  std::vector<Candidate> cands_;
  std::uint64_t bell_budget_;
};

struct TensorEssentialReport {
  bool essential = false;
  std::string witness;         // "(C1, C2)" when essential
  std::string counterexample;  // first failing coloring (re-verified) otherwise
  bool exhaustive = true;      // false when the coloring space was sampled
  std::uint64_t colorings_checked = 0;
  int colors_used = 0;
  std::string scope;
};

// Checks that the product of two partitions is essential for the aligned
// pair objects in the product category, identifying product subobject
// classes with index pairs (row-major). Exhaustive within the Bell budget;
// past it, a seeded randomized counterexample search (a found counterexample
// is re-verified; absence proves nothing and is reported as sampled).
TensorEssentialReport tensor_essential_check(
    const Category& cat1, int pattern1, int middle1, const Partition& lambda1,
    const std::vector<int>& range1, const Category& cat2, int pattern2,
    int middle2, const Partition& lambda2, const std::vector<int>& range2,
    EssentialMode mode, std::uint64_t bell_budget = kDefaultBellBudget);

struct SuiteReport {
  bool passed = true;
  std::vector<std::string> lines;       // informational, deterministic order
  std::vector<std::string> violations;  // hard failures
  std::vector<std::string> expected_exhibits;  // recorded, do not fail the suite
};

struct CorpusCategory {
  const Category* cat;
  bool amalgamation;
};

// Degree-law validation over a corpus: the |Aut| factor between embedding
// and structural degrees everywhere; multiplicativity of both degrees on the
// given category pairs; degree monotonicity along arrows on amalgamation
// categories (violations elsewhere recorded as exhibits).
SuiteReport degree_law_suite(const std::vector<CorpusCategory>& corpus,
                             const std::vector<std::pair<int, int>>& product_pairs,
                             std::uint64_t bell_budget = kDefaultBellBudget);

}  // namespace ramseylab
