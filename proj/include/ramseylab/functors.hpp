#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramseylab/category.hpp"
#include "ramseylab/entropy.hpp"
#include "ramseylab/fincat.hpp"
#include "ramseylab/ramsey.hpp"
#include "ramseylab/structures.hpp"

namespace ramseylab {

struct FunctorTable {
  const Category* source = nullptr;
  const Category* target = nullptr;
  std::vector<int> object_map;                     // per source object index
  std::unordered_map<MorId, MorId> morphism_map;   // per source morphism

  int apply_object(int a) const;
  MorId apply(MorId f) const;  // throws on an unmapped morphism
};

// Exhaustive functor-law validation: total maps with preserved endpoints,
// identities to identities, composition to composition. The first violated
// law is reported with the witnessing morphisms.
FunctorTable validate_functor(const Category& source, const Category& target,
                              std::vector<int> object_map,
                              std::unordered_map<MorId, MorId> morphism_map);

// Source objects mapped onto the given target object, in object order.
std::vector<int> fiber(const FunctorTable& u, int target_object);

struct FunctorProperties {
  bool finitary = true;  // automatic on finite categories; reported as such
  std::vector<std::string> fiber_sizes;  // per target object: name and size
  bool reasonable = true;
  std::string reasonable_witness;  // first failing (arrow, fiber object)
  bool unique_restrictions = true;
  std::string unique_witness;
  bool expansion = true;  // within the given scope only, never extrapolated
  std::vector<std::string> expansion_records;  // per target object
  bool target_directed = false;  // recorded, not required
};

// Decides each forgetful-functor property exhaustively over the finite
// scope. Reachability preservation (A -> B implies U(A) -> U(B)) is
// re-asserted as an internal tripwire while scanning.
FunctorProperties functor_properties(const FunctorTable& u);

enum class EnforcementMode { strict, observe };

// Validates that entropy never decreases when the functor forgets structure:
// for every source X, entropy(target, U(X)) >= entropy(source, X) within
// 1e-9. strict refuses (ValidationError) when any of the four functor
// properties fails; observe records the failed properties and checks anyway.
// Also cross-checks the fiber degree-sum identity (the degree of U(A) equals
// the sum of the degrees of one representative per isomorphism class of the
// fiber) — a hard violation under strict, a recorded observation under
// observe where the identity's hypotheses were not verified.
SuiteReport entropy_nondecreasing_check(const FunctorTable& u,
                                        const EntropyConfig& cfg,
                                        EnforcementMode mode);

FunctorTable identity_functor(const Category& cat);

// Ordered graphs on fixed vertex sets mapped onto labeled graphs by
// forgetting the vertex order; owns both categories.
// Heap-held categories so the table's category pointers survive moves of
// the instance.
struct OrderForgettingInstance {
  std::unique_ptr<OrderedGraphCategory> ordered;
  std::unique_ptr<StructureCategory> plain;
  FunctorTable table;
};
OrderForgettingInstance order_forgetting_functor(int n_max);

// JSON form: {"source": "cat.json", "target": "cat.json",
//             "objects": {"A": "UA", ...}, "morphisms": {"f": "Uf", ...}}
// with category paths resolved relative to the functor file's directory.
struct LoadedFunctor {
  std::unique_ptr<FinCategory> source;
  std::unique_ptr<FinCategory> target;
  FunctorTable table;
};
LoadedFunctor functor_from_json_file(const std::string& path);

}  // namespace ramseylab
