#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ramseylab/category.hpp"
#include "ramseylab/errors.hpp"
#include "ramseylab/fincat.hpp"
#include "ramseylab/numbers.hpp"

namespace ramseylab {

// Relational structures on at most kMaxVertices points, one binary relation,
// stored as a row-major bit matrix (bit i*n + j <=> relation(i, j)).
//
//   graph    symmetric, irreflexive          (relation key "edge")
//   poset    reflexive partial order         (relation key "le")
//   linord   total order                     (relation key "le")
//   digraph  irreflexive, otherwise free     (relation key "arc")
enum class StructureClass { graph, poset, linord, digraph };

const char* structure_class_name(StructureClass cls);
StructureClass structure_class_from_name(const std::string& name);

inline constexpr int kMaxVertices = 8;

class Structure {
 public:
  // Validates the bit matrix against the class laws; the matrix must carry
  // the full relation (posets: reflexive and transitively closed).
  Structure(StructureClass cls, int n, std::uint64_t bits);

  // Builds from related pairs. Graph pairs are symmetrized; poset / linord
  // pairs are generators whose reflexive-transitive closure is taken (a
  // cycle through distinct points is rejected as an antisymmetry failure).
  static Structure from_pairs(StructureClass cls, int n,
                              const std::vector<std::pair<int, int>>& pairs);

  static Structure chain(int n);                       // linord on n points
  static Structure complete_graph(int n);
  static Structure path_graph(int n);                  // 0-1-2-...-(n-1)
  static Structure cycle_graph(int n);                 // n >= 3
  static Structure empty_graph(int n);

  StructureClass structure_class() const { return cls_; }
  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool rel(int i, int j) const {
    return (bits_ >> (i * n_ + j)) & 1u;
  }

  bool operator==(const Structure&) const = default;

 private:
  StructureClass cls_;
  int n_;
  std::uint64_t bits_;
};

// Injective maps m with rel_A(i, j) <=> rel_B(m(i), m(j)); enumerated in
// lexicographic order of the image tuple. Throws BudgetError past `budget`.
std::vector<std::vector<int>> embeddings(const Structure& a, const Structure& b,
                                         std::size_t budget = 5000);
std::size_t count_embeddings(const Structure& a, const Structure& b,
                             std::size_t budget = 5000);
std::size_t automorphism_count(const Structure& a);

struct CanonicalForm {
  std::uint64_t encoding;  // minimal row-major bit matrix over relabelings
  std::vector<int> perm;   // canonical vertex i corresponds to original perm[i]
};
CanonicalForm canonical_form(const Structure& s);
bool are_isomorphic(const Structure& a, const Structure& b);

// "chain{n}" for total orders, "{g|p|d}{n}-{hex of canonical encoding}" else.
std::string structure_default_name(const Structure& s);

// Per-class size ceiling for exhaustive universe scans.
int universe_default_max(StructureClass cls);

// One canonical representative per isomorphism class of size 1..n_max,
// ordered by (size, canonical encoding). Throws BudgetError past the class
// ceiling.
std::vector<Structure> structure_universe(StructureClass cls, int n_max);

// Number of linear extensions (poset or linord input).
std::uint64_t linear_extension_count(const Structure& s);

// Closed-form structural degree for classes where one is known:
//   graph   n! / |Aut|        (orderings up to automorphism)
//   poset   extensions / |Aut|
//   linord  1
// Directed graphs have no implemented closed form and throw.
ExtNat structural_degree_oracle(const Structure& s);

// Lazy category view of a structure list: hom-sets are embedding lists
// computed on first use, ordered lexicographically by image tuple. Morphism
// ids are positional — (dom * objects + cod) * 5000 + position — so handles
// are deterministic regardless of evaluation order. Thread-safe.
class StructureCategory final : public Category {
 public:
  StructureCategory(std::string name, std::vector<Structure> objects,
                    std::size_t hom_budget = 5000);

  const std::string& name() const override { return name_; }
  int object_count() const override { return static_cast<int>(objects_.size()); }
  const std::string& object_name(int obj) const override {
    return names_.at(static_cast<std::size_t>(obj));
  }
  const std::vector<MorId>& hom(int dom, int cod) const override;
  int mor_dom(MorId m) const override;
  int mor_cod(MorId m) const override;
  std::string morphism_name(MorId m) const override;
  MorId compose(MorId g, MorId f) const override;
  MorId identity(int obj) const override;
  int hom_position(MorId m) const override;
  bool mono_certified() const override { return true; }

  const Structure& object_structure(int obj) const {
    return objects_.at(static_cast<std::size_t>(obj));
  }
  // Vertex map of an embedding handle.
  const std::vector<int>& morphism_map(MorId m) const;
  // Index of the object isomorphic to s, if any.
  std::optional<int> find_isomorphic(const Structure& s) const;

 private:
  struct HomData {
    std::vector<std::vector<int>> maps;
    std::vector<MorId> ids;
  };
  const HomData& hom_data(int dom, int cod) const;

  std::string name_;
  std::vector<Structure> objects_;
  std::vector<std::string> names_;
  std::vector<std::uint64_t> canon_;
  std::size_t hom_budget_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<HomData>> cache_;
};

// JSON form: {"class": ..., "n": ..., "relations": {"edge"|"le"|"arc": [[i,j],...]}}
// with the same pair semantics as Structure::from_pairs.
Structure structure_from_json_text(const std::string& text);
Structure structure_from_json_file(const std::string& path);
std::string structure_to_json_text(const Structure& s);

// Compact CLI form: comma-separated "i-j" related pairs or bare "i" vertex
// mentions; size is the largest vertex mentioned plus one ("0-1,1-2,3").
Structure parse_structure_shorthand(StructureClass cls, const std::string& text);

// Ordered graphs on fixed vertex sets {0..n-1}: one object per (labeled
// graph, linear vertex order) pair, morphisms the induced embeddings that
// are strictly increasing with respect to the two orders. Forgetting the
// order lands in the category of labeled graphs with all induced
// embeddings, so order-count many objects sit over each labeled graph.
struct OrderedGraphCategory {
  FinCategory cat;
  std::vector<Structure> object_structures;     // underlying labeled graph
  std::vector<std::vector<int>> object_orders;  // vertices in increasing order
  std::vector<std::vector<int>> morphism_maps;  // per dense morphism id
};
OrderedGraphCategory ordered_graph_category(int n_max);

// All labeled graphs on the fixed vertex sets {0..n-1} for n = 1..n_max,
// with every induced embedding as a morphism (non-skeletal on purpose:
// fibers of the order-forgetting map are literal preimages).
std::vector<Structure> labeled_graphs(int n_max);

}  // namespace ramseylab
