#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramseylab/errors.hpp"

namespace ramseylab {

// Morphism handle. Explicit categories use dense declaration indices; lazy
// views encode (dom, cod, position) arithmetically. Either way a handle is
// stable for the lifetime of its category and independent of access order.
using MorId = std::int64_t;

// Minimal interface the combinatorial engines need: finite object list,
// ordered hom-sets, composition, identities. Implementations must be
// internally synchronized; hom() references stay valid once returned.
class Category {
 public:
  virtual ~Category() = default;

  virtual const std::string& name() const = 0;
  virtual int object_count() const = 0;
  virtual const std::string& object_name(int obj) const = 0;

  // Morphisms dom -> cod in a fixed order (declaration or lexicographic).
  virtual const std::vector<MorId>& hom(int dom, int cod) const = 0;

  virtual int mor_dom(MorId m) const = 0;
  virtual int mor_cod(MorId m) const = 0;
  virtual std::string morphism_name(MorId m) const = 0;

  // g after f; requires cod(f) == dom(g).
  virtual MorId compose(MorId g, MorId f) const = 0;
  virtual MorId identity(int obj) const = 0;

  // Position of m inside hom(dom(m), cod(m)).
  virtual int hom_position(MorId m) const;

  // True when every morphism is mono by construction (injective maps).
  // Explicit tables report the flag computed at validation time.
  virtual bool mono_certified() const { return false; }

  int object_index(const std::string& name) const;  // throws if absent
  std::optional<int> find_object(const std::string& name) const;
};

// Invertible endomorphisms of obj, in hom order.
std::vector<MorId> aut(const Category& cat, int obj);

bool reaches(const Category& cat, int from, int to);

// Objects b with hom(obj, b) nonempty, ascending ids; contains obj.
std::vector<int> upset(const Category& cat, int obj);

bool objects_isomorphic(const Category& cat, int x, int y);

struct PredicateResult {
  bool holds = true;
  std::string witness;  // first counterexample, empty when holds
};

// f mono iff no distinct parallel pair g, h has f.g = f.h; exhaustive.
PredicateResult check_all_mono(const Category& cat);

// Every pair of objects has a common target.
PredicateResult check_directed(const Category& cat);

// Every span f: A -> B, g: A -> C extends to a commuting cospan.
PredicateResult check_amalgamation(const Category& cat);

// Every object reaches some member of the given object subset.
PredicateResult check_cofinal(const Category& cat, const std::vector<int>& subset);

// Identity and associativity laws over all composable pairs/triples.
// For spot checks of programmatically built tables.
PredicateResult check_category_laws(const Category& cat);

}  // namespace ramseylab
