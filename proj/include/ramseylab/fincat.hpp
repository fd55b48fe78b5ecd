#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramseylab/category.hpp"

namespace ramseylab {

struct MorphismDecl {
  std::string id, dom, cod;
};

// Raw composition-table data as found in category JSON files. Compositions
// involving identities may be omitted; validation fills them in from the
// identity laws and rejects conflicting explicit entries.
struct CategoryData {
  std::string name;
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identities;          // object -> morphism id
  std::vector<std::array<std::string, 3>> compose;        // [g, f, g.f]
};

// Explicit finite category. Composition is a dense table below 4096
// morphisms and a hash table above; behavior is identical.
class FinCategory final : public Category {
 public:
  // Checks well-formedness, identity laws, totality of composition on
  // composable pairs, associativity on all composable triples, then computes
  // the all-mono flag. Throws ValidationError naming the first violated law
  // and its witnessing morphisms.
  static FinCategory validate(const CategoryData& data);

  // Programmatic builder for tables that are correct by construction
  // (products, powers, state spaces, structure materializations). Laws are
  // not re-checked here; tests spot-check with check_category_laws.
  static FinCategory trusted(std::string name, std::vector<std::string> objects,
                             std::vector<MorphismDecl> morphisms,
                             std::vector<MorId> identities,
                             const std::vector<std::array<MorId, 3>>& compose,
                             bool mono_certified);

  const std::string& name() const override { return name_; }
  int object_count() const override { return static_cast<int>(objects_.size()); }
  const std::string& object_name(int obj) const override {
    return objects_.at(static_cast<std::size_t>(obj));
  }
  const std::vector<MorId>& hom(int dom, int cod) const override;
  int mor_dom(MorId m) const override { return dom_.at(static_cast<std::size_t>(m)); }
  int mor_cod(MorId m) const override { return cod_.at(static_cast<std::size_t>(m)); }
  std::string morphism_name(MorId m) const override {
    return mor_names_.at(static_cast<std::size_t>(m));
  }
  MorId compose(MorId g, MorId f) const override;
  MorId identity(int obj) const override {
    return identities_.at(static_cast<std::size_t>(obj));
  }
  int hom_position(MorId m) const override {
    return hom_pos_.at(static_cast<std::size_t>(m));
  }
  bool mono_certified() const override { return all_mono_; }

  int morphism_count() const { return static_cast<int>(mor_names_.size()); }
  MorId morphism_index(const std::string& id) const;  // throws if absent

  CategoryData to_data() const;

 private:
  FinCategory() = default;
  void build_hom_index();
  void set_compose(MorId g, MorId f, MorId gf);
  MorId lookup_compose(MorId g, MorId f) const;  // -1 when absent

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> mor_names_;
  std::vector<int> dom_, cod_;
  std::vector<MorId> identities_;
  std::vector<std::vector<MorId>> hom_;  // [dom * nobj + cod]
  std::vector<int> hom_pos_;
  bool dense_ = true;
  std::vector<MorId> table_;                       // dense
  std::unordered_map<std::uint64_t, MorId> hash_;  // hashed
  bool all_mono_ = false;
};

CategoryData category_from_json_text(const std::string& text);
CategoryData category_from_json_file(const std::string& path);
std::string category_to_json_text(const CategoryData& data);

// Explicit copy of any category view: dense ids, full composition table.
// Intended for desk-scale inputs (products, functor instances); the lazy
// structure views are used directly where tables would be large.
FinCategory materialize(const Category& cat, const std::string& name);

// Product category: objects and morphisms are pairs, row-major over the
// factor orders, composition componentwise.
FinCategory product(const Category& a, const Category& b);

// n-fold product with tuple objects.
FinCategory power(const Category& a, int n);

// Coproduct of the powers of the base category up to max_len: objects are
// tuples of length 1..max_len, morphisms act componentwise between tuples of
// equal length. star concatenates.
class StateSpace {
 public:
  StateSpace(const Category& base, int max_len);

  const FinCategory& category() const { return *cat_; }
  int tuple_object(const std::vector<int>& base_objects) const;
  std::vector<int> object_tuple(int obj) const;
  int star(int x, int y) const;            // concatenation on objects
  MorId star_mor(MorId f, MorId g) const;  // concatenation on morphisms

 private:
  int base_count_;
  int max_len_;
  std::vector<int> obj_offset_;             // per length
  std::vector<MorId> mor_offset_;           // per length
  std::vector<std::int64_t> mor_count_;     // per length
  std::unique_ptr<FinCategory> cat_;
};

// Searches, in object declaration order, for (D, w in hom(C, D)) such that
// composing w with every A -> C lands inside hom(B, D) . f. The returned
// witness is re-verified before it is handed out.
struct ExtensionWitness {
  int D;
  MorId w;
};
std::optional<ExtensionWitness> amalgamate_ext(const Category& cat, int A, int B,
                                               int C, MorId f);

}  // namespace ramseylab
