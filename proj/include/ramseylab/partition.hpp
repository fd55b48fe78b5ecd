#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ramseylab/errors.hpp"
#include "ramseylab/numbers.hpp"

namespace ramseylab {

// Set partition of the ground set [0, n) in canonical restricted-growth form:
// label(0) = 0 and label(x) <= 1 + max(label(0..x-1)). Two partitions are equal
// iff their label vectors are equal.
class Partition {
 public:
  Partition() = default;

  static Partition discrete(int n);
  static Partition trivial(int n);

  // Blocks must be disjoint, nonempty, and cover [0, ground_size).
  static Partition from_blocks(const std::vector<std::vector<int>>& blocks,
                               int ground_size);

  // Arbitrary labels; relabeled to canonical form.
  static Partition from_labels(const std::vector<int>& labels);

  // Canonical restricted-growth labels, already validated. Internal fast path.
  static Partition from_rgs(std::vector<int> rgs);

  // Textual form: base-36 digit per element for < 36 blocks, else
  // dot-separated decimal labels ("0.1.0.2").
  static Partition parse_rgs(const std::string& text);

  int ground_size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return block_count_; }
  int block_of(int x) const { return labels_.at(static_cast<std::size_t>(x)); }
  bool same_block(int a, int b) const { return block_of(a) == block_of(b); }
  const std::vector<int>& labels() const { return labels_; }

  bool is_trivial() const { return block_count_ <= 1; }
  bool is_discrete() const { return block_count_ == ground_size(); }

  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;  // indexed by block label
  std::string rgs_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int block_count_ = 0;
};

// Refinement comparison of p against q. Convention: p is finer than q when
// every block of p is contained in a block of q.
enum class PartitionRelation { equal, first_finer, first_coarser, incomparable };

PartitionRelation compare(const Partition& p, const Partition& q);
bool finer_or_equal(const Partition& p, const Partition& q);
bool coarser_or_equal(const Partition& p, const Partition& q);

// Supremum in the order where finer = larger: the coarsest common refinement.
// Elements share a block iff they share a block in every input.
Partition join(const std::vector<Partition>& parts);

// Partition of [0, |p|*|q|) with blocks beta x gamma; the pair (i, j) sits at
// row-major index i*|q| + j.
Partition tensor(const Partition& p, const Partition& q);

// Equal multisets of block sizes.
bool are_isomorphic(const Partition& p, const Partition& q);

// Surjection onto a palette of colors; color classes may be empty.
struct Coloring {
  int ground_size = 0;
  int palette = 0;
  std::vector<int> color_of;
};

Partition partition_of_coloring(const Coloring& c);
Coloring coloring_of_partition(const Partition& p);

// Number of partitions of [0, n) into at most max_blocks blocks
// (max_blocks = 0 means unbounded). Counts above cap are reported as
// cap + 1, so callers can detect overflow without overflowing u64.
std::uint64_t count_partitions_capped(int n, int max_blocks, std::uint64_t cap);

// Streams partitions of [0, n) in lexicographic restricted-growth order,
// optionally only completions of a fixed label prefix.
class PartitionStream {
 public:
  PartitionStream(int n, int max_blocks);
  PartitionStream(int n, int max_blocks, std::vector<int> prefix);

  // False once exhausted. current() is valid after a true advance().
  bool advance();
  const std::vector<int>& current() const { return rgs_; }
  int current_block_count() const { return max_so_far_.empty() ? 0 : max_so_far_.back() + 1; }
  Partition current_partition() const { return Partition::from_rgs(rgs_); }

 private:
  int n_;
  int max_blocks_;
  int frozen_;  // positions [0, frozen_) never change
  bool started_ = false;
  bool done_ = false;
  std::vector<int> rgs_;
  std::vector<int> max_so_far_;
};

// All valid restricted-growth prefixes of the given depth, lexicographic.
// Used to split a sweep across workers.
std::vector<std::vector<int>> rgs_prefixes(int n, int max_blocks, int depth);

// Uniform labels then canonicalization; deterministic for a fixed generator
// state. Block-count bound as in the streams.
Partition random_partition(int n, int max_blocks, std::mt19937_64& rng);

enum class EntropyKind { shannon, boltzmann };

double shannon_entropy(const Partition& p);
double boltzmann_entropy(const Partition& p);
double entropy_eval(EntropyKind kind, const Partition& p);
const char* entropy_kind_name(EntropyKind kind);

struct AxiomReport {
  bool passed = true;
  std::string failed_axiom;  // empty when passed
  std::string witness;       // description of the first counterexample
};

// Checks, in order: the log-bound, the vanishing law, monotonicity under
// coarsening, isomorphism invariance, and tensor additivity. Ground sets run
// to n_max; the tensor axiom covers pairs with |X|*|Y| <= n_max*n_max.
// Scan order is fixed (sizes ascending, restricted-growth lexicographic), so
// the reported counterexample is the first one in that order.
AxiomReport check_entropy_axioms(const std::function<double(const Partition&)>& H,
                                 int n_max);
AxiomReport check_entropy_axioms(EntropyKind kind, int n_max);

}  // namespace ramseylab
