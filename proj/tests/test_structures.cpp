#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ramseylab/errors.hpp"
#include "ramseylab/structures.hpp"

using namespace ramseylab;

namespace {

// Oracle: every injective tuple, checked against the induced-substructure
// condition straight from the definition.
void injective_tuples(int m, int n, std::vector<int>& cur,
                      std::vector<bool>& used,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(v)] = true;
    cur.push_back(v);
    injective_tuples(m, n, cur, used, out);
    cur.pop_back();
    used[static_cast<std::size_t>(v)] = false;
  }
}

std::vector<std::vector<int>> embeddings_oracle(const Structure& a,
                                                const Structure& b) {
  std::vector<std::vector<int>> tuples, out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  injective_tuples(a.size(), b.size(), cur, used, tuples);
  for (const auto& m : tuples) {
    bool ok = true;
    for (int i = 0; i < a.size() && ok; ++i)
      for (int j = 0; j < a.size() && ok; ++j)
        if (a.rel(i, j) !=
            b.rel(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]))
          ok = false;
    if (ok) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Structure antichain_poset(int n) {
  return Structure::from_pairs(StructureClass::poset, n, {});
}

}  // namespace

TEST_CASE("class laws are enforced at construction") {
  CHECK_NOTHROW(Structure::complete_graph(4));
  CHECK_NOTHROW(Structure::chain(8));
  CHECK_THROWS_AS(Structure::chain(9), ValidationError);  // vertex ceiling
  // A graph bit matrix must be symmetric and irreflexive.
  CHECK_THROWS_AS(Structure(StructureClass::graph, 2, 0b10), ValidationError);
  CHECK_THROWS_AS(Structure(StructureClass::graph, 1, 0b1), ValidationError);
  // Posets must be transitively closed as given.
  const std::uint64_t open_chain =
      (1u << 0) | (1u << 4) | (1u << 8) | (1u << 1) | (1u << 5);  // 0<1<2 only
  CHECK_THROWS_AS(Structure(StructureClass::poset, 3, open_chain),
                  ValidationError);
  // Cycles through distinct points violate antisymmetry.
  CHECK_THROWS_AS(
      Structure::from_pairs(StructureClass::poset, 2, {{0, 1}, {1, 0}}),
      ValidationError);
  // from_pairs closes generators transitively.
  const Structure chain3 =
      Structure::from_pairs(StructureClass::linord, 3, {{0, 1}, {1, 2}});
  CHECK(chain3 == Structure::chain(3));
}

TEST_CASE("embedding enumeration matches the brute-force oracle") {
  const std::vector<std::pair<Structure, Structure>> instances = {
      {Structure::path_graph(3), Structure::cycle_graph(4)},
      {Structure::path_graph(3), Structure::path_graph(4)},
      {Structure::complete_graph(3), Structure::complete_graph(4)},
      {Structure::complete_graph(2), Structure::path_graph(4)},
      {Structure::empty_graph(2), Structure::cycle_graph(5)},
      {Structure::chain(2), Structure::chain(5)},
      {antichain_poset(2), antichain_poset(4)},
      {Structure::from_pairs(StructureClass::poset, 2, {{0, 1}}),
       Structure::from_pairs(StructureClass::poset, 3, {{0, 1}, {0, 2}})},
      {Structure::from_pairs(StructureClass::digraph, 2, {{0, 1}}),
       Structure::from_pairs(StructureClass::digraph, 3,
                             {{0, 1}, {1, 2}, {2, 0}})},
  };
  for (const auto& [a, b] : instances) {
    const auto got = embeddings(a, b);
    CHECK(got == embeddings_oracle(a, b));  // same maps, same lex order
    CHECK(count_embeddings(a, b) == got.size());
  }
  CHECK_THROWS_AS(embeddings(Structure::chain(2), Structure::chain(8), 5),
                  BudgetError);
}

TEST_CASE("automorphism counts of the standard examples") {
  CHECK(automorphism_count(Structure::complete_graph(3)) == 6);
  CHECK(automorphism_count(Structure::path_graph(3)) == 2);
  CHECK(automorphism_count(Structure::cycle_graph(4)) == 8);
  CHECK(automorphism_count(Structure::path_graph(4)) == 2);
  CHECK(automorphism_count(Structure::empty_graph(3)) == 6);
  CHECK(automorphism_count(Structure::chain(6)) == 1);
  CHECK(automorphism_count(antichain_poset(3)) == 6);
}

TEST_CASE("canonical forms are relabeling invariants") {
  const Structure p4 = Structure::path_graph(4);
  const Structure p4_shuffled = Structure::from_pairs(
      StructureClass::graph, 4, {{2, 0}, {0, 3}, {3, 1}});  // 2-0-3-1 path
  CHECK(canonical_form(p4).encoding == canonical_form(p4_shuffled).encoding);
  CHECK(are_isomorphic(p4, p4_shuffled));
  CHECK(!are_isomorphic(p4, Structure::cycle_graph(4)));
  CHECK(!are_isomorphic(p4, Structure::path_graph(3)));

  // The permutation actually witnesses the canonical relabeling.
  const CanonicalForm cf = canonical_form(p4_shuffled);
  const Structure relabeled = [&] {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (p4_shuffled.rel(cf.perm[static_cast<std::size_t>(i)],
                            cf.perm[static_cast<std::size_t>(j)]) &&
            i < j)
          pairs.push_back({i, j});
    return Structure::from_pairs(StructureClass::graph, 4, pairs);
  }();
  CHECK(relabeled.bits() == cf.encoding);
}

TEST_CASE("universes list one representative per isomorphism class") {
  CHECK(structure_universe(StructureClass::graph, 4).size() == 1 + 2 + 4 + 11);
  CHECK(structure_universe(StructureClass::linord, 5).size() == 5);
  CHECK(structure_universe(StructureClass::poset, 4).size() == 1 + 2 + 5 + 16);
  CHECK(structure_universe(StructureClass::digraph, 3).size() == 1 + 3 + 16);

  const auto graphs = structure_universe(StructureClass::graph, 4);
  for (std::size_t i = 0; i + 1 < graphs.size(); ++i) {
    CHECK(!are_isomorphic(graphs[i], graphs[i + 1]));
    const bool ordered =
        graphs[i].size() < graphs[i + 1].size() ||
        (graphs[i].size() == graphs[i + 1].size() &&
         canonical_form(graphs[i]).encoding <
             canonical_form(graphs[i + 1]).encoding);
    CHECK(ordered);
  }

  CHECK(universe_default_max(StructureClass::graph) == 7);
  CHECK(universe_default_max(StructureClass::poset) == 6);
  CHECK(universe_default_max(StructureClass::linord) == 8);
  CHECK(universe_default_max(StructureClass::digraph) == 4);
  CHECK_THROWS_AS(structure_universe(StructureClass::graph, 8), BudgetError);
  CHECK_THROWS_AS(structure_universe(StructureClass::digraph, 5), BudgetError);
}

TEST_CASE("linear extension counts and the closed-form degrees") {
  CHECK(linear_extension_count(Structure::chain(5)) == 1);
  CHECK(linear_extension_count(antichain_poset(3)) == 6);
  const Structure v_poset =
      Structure::from_pairs(StructureClass::poset, 3, {{0, 1}, {0, 2}});
  CHECK(linear_extension_count(v_poset) == 2);

  CHECK(structural_degree_oracle(Structure::complete_graph(3)).value() == 1);
  CHECK(structural_degree_oracle(Structure::path_graph(3)).value() == 3);
  CHECK(structural_degree_oracle(Structure::cycle_graph(4)).value() == 3);
  CHECK(structural_degree_oracle(Structure::path_graph(4)).value() == 12);
  CHECK(structural_degree_oracle(Structure::chain(7)).value() == 1);
  CHECK(structural_degree_oracle(antichain_poset(3)).value() == 1);
  CHECK(structural_degree_oracle(v_poset).value() == 1);
  CHECK_THROWS(structural_degree_oracle(
      Structure::from_pairs(StructureClass::digraph, 2, {{0, 1}})));
}

TEST_CASE("shorthand and JSON forms parse to the same structures") {
  CHECK(parse_structure_shorthand(StructureClass::graph, "0-1,1-2") ==
        Structure::path_graph(3));
  CHECK(parse_structure_shorthand(StructureClass::graph, "3") ==
        Structure::empty_graph(4));
  CHECK(parse_structure_shorthand(StructureClass::linord, "0-1,1-2") ==
        Structure::chain(3));
  // The default names round-trip.
  CHECK(parse_structure_shorthand(StructureClass::linord, "chain4") ==
        Structure::chain(4));
  CHECK_THROWS_AS(parse_structure_shorthand(StructureClass::graph, "chain4"),
                  ValidationError);

  const Structure s = Structure::cycle_graph(5);
  CHECK(structure_from_json_text(structure_to_json_text(s)) == s);
  const Structure d =
      Structure::from_pairs(StructureClass::digraph, 3, {{0, 1}, {2, 1}});
  CHECK(structure_from_json_text(structure_to_json_text(d)) == d);
}

TEST_CASE("structure categories expose embeddings with stable handles") {
  const StructureCategory cat(
      "probe", {Structure::path_graph(3), Structure::cycle_graph(4),
                Structure::complete_graph(3)});
  const auto& h = cat.hom(0, 1);
  CHECK(h.size() == embeddings_oracle(Structure::path_graph(3),
                                      Structure::cycle_graph(4))
                        .size());
  CHECK(cat.hom(2, 1).empty());  // no triangle inside a 4-cycle
  CHECK(cat.mono_certified());

  // Handles encode (dom, cod, position) and survive access order.
  const MorId m = h[2];
  CHECK(cat.mor_dom(m) == 0);
  CHECK(cat.mor_cod(m) == 1);
  CHECK(cat.hom_position(m) == 2);
  CHECK(m == (static_cast<MorId>(0) * 3 + 1) * 5000 + 2);

  // Composition composes the vertex maps.
  const auto& into_p3 = cat.hom(2, 2);
  REQUIRE(!into_p3.empty());
  for (MorId f : cat.hom(0, 1))
    for (MorId g : cat.hom(1, 1)) {
      const MorId gf = cat.compose(g, f);
      const auto& fm = cat.morphism_map(f);
      const auto& gm = cat.morphism_map(g);
      const auto& gfm = cat.morphism_map(gf);
      for (std::size_t i = 0; i < fm.size(); ++i)
        CHECK(gfm[i] == gm[static_cast<std::size_t>(fm[i])]);
    }

  const Structure c4_relabeled = Structure::from_pairs(
      StructureClass::graph, 4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
  CHECK(cat.find_isomorphic(c4_relabeled) == 1);
  CHECK(!cat.find_isomorphic(Structure::path_graph(4)).has_value());
}

TEST_CASE("ordered graphs stack order-many objects over each labeled graph") {
  CHECK(labeled_graphs(3).size() == 1 + 2 + 8);
  const OrderedGraphCategory og = ordered_graph_category(3);
  CHECK(og.cat.object_count() == 1 + 2 * 2 + 8 * 6);
  REQUIRE(og.object_structures.size() ==
          static_cast<std::size_t>(og.cat.object_count()));
  REQUIRE(og.object_orders.size() ==
          static_cast<std::size_t>(og.cat.object_count()));

  // Morphisms respect both orders: every stored map is strictly increasing
  // through the order sequences.
  for (int x = 0; x < og.cat.object_count(); ++x) {
    const auto& order = og.object_orders[static_cast<std::size_t>(x)];
    CHECK(static_cast<int>(order.size()) ==
          og.object_structures[static_cast<std::size_t>(x)].size());
  }
  CHECK(og.cat.mono_certified());
}
