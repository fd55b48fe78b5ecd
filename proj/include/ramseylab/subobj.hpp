#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ramseylab/category.hpp"
#include "ramseylab/partition.hpp"

namespace ramseylab {

// Orbits of hom(A, B) under precomposition with automorphisms of A. Requires
// every morphism mono (certified by the category or re-checked here): then
// the action is free and every orbit has exactly |Aut(A)| members. Classes
// are ordered by least member position, so partitions over them are
// canonical and reproducible.
class SubobjectSet {
 public:
  SubobjectSet(const Category& cat, int A, int B);

  const Category& category() const { return *cat_; }
  int pattern_object() const { return a_; }
  int ambient_object() const { return b_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  // Members sorted by hom position; front() is the representative.
  const std::vector<MorId>& class_members(int idx) const {
    return classes_.at(static_cast<std::size_t>(idx));
  }
  MorId representative(int idx) const {
    return classes_.at(static_cast<std::size_t>(idx)).front();
  }
  int index_of(MorId f) const;  // throws on a morphism outside hom(A, B)

 private:
  const Category* cat_;
  int a_, b_;
  std::vector<std::vector<MorId>> classes_;
  std::unordered_map<MorId, int> index_;
};

// The map on subobject classes induced by postcomposition with w (an
// arrow from source's ambient object to target's). Verifies that every
// member of a class lands in the same target class.
std::vector<int> subobject_class_map(const SubobjectSet& source,
                                     const SubobjectSet& target, MorId w);

// Partition of the source ground set whose blocks are the nonempty
// preimages of pi's blocks under the class map.
Partition pullback_by_map(const std::vector<int>& class_map, const Partition& pi);

struct PulledPartition {
  Partition partition;          // over source subobject classes
  std::vector<int> class_map;   // source class -> target class
};

PulledPartition pullback(const SubobjectSet& source, const SubobjectSet& target,
                         MorId w, const Partition& pi);
// Convenience form: builds both subobject sets from (pattern, dom w, cod w).
PulledPartition pullback(const Category& cat, int pattern, MorId w,
                         const Partition& pi);

// Exhaustive (or sampled, past 10^4 partitions) verification of the pullback
// calculus on one (A, B, C, w) instance:
//   (a) the preimage of the class of w.g is exactly the class of g;
//   (b) every nonempty preimage of a single class is a single class;
//   (c) pulling back any partition yields a valid partition;
//   (d) a partition of the source classes refines the pullback of a coloring
//       exactly when equivalent classes always receive equal colors.
struct BasicPropsReport {
  bool passed = true;
  std::vector<std::string> violations;
  std::size_t class_pairs_checked = 0;
  std::size_t partitions_checked = 0;
  std::size_t refinement_pairs_checked = 0;
  bool sampled = false;  // true when the partition space exceeded 10^4
};

BasicPropsReport check_basic_props(const Category& cat, int A, int B, int C,
                                   MorId w);

}  // namespace ramseylab
