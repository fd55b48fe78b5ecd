#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ramseylab/errors.hpp"
#include "ramseylab/fincat.hpp"
#include "ramseylab/partition.hpp"
#include "ramseylab/structures.hpp"
#include "ramseylab/subobj.hpp"

using namespace ramseylab;

namespace {

CategoryData involution_pair_data() {
  CategoryData d;
  d.name = "involution-pair";
  d.objects = {"A", "B"};
  d.morphisms = {{"idA", "A", "A"},
                 {"idB", "B", "B"},
                 {"sigma", "B", "B"},
                 {"f1", "A", "B"},
                 {"f2", "A", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}};
  d.compose = {{"sigma", "sigma", "idB"},
               {"sigma", "f1", "f2"},
               {"sigma", "f2", "f1"}};
  return d;
}

// Position of a 2-subset of {0..n-1} in lexicographic subset order.
int subset_index(int n, int x, int y) {
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i == x && j == y) return idx;
      ++idx;
    }
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("subobject classes are automorphism orbits of equal size") {
  // Chains are rigid: classes are singletons, one per image subset.
  const StructureCategory chains(
      "chains", {Structure::chain(2), Structure::chain(3), Structure::chain(4)});
  const SubobjectSet sb(chains, 0, 1);
  CHECK(sb.class_count() == 3);
  for (int i = 0; i < 3; ++i) CHECK(sb.class_members(i).size() == 1);

  // The 2-clique in a 4-cycle: eight embeddings, |Aut(K2)| = 2, four edges.
  const StructureCategory graphs(
      "graphs", {Structure::complete_graph(2), Structure::cycle_graph(4)});
  const SubobjectSet edges(graphs, 0, 1);
  CHECK(edges.class_count() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(edges.class_members(i).size() == 2);
    CHECK(edges.representative(i) == edges.class_members(i).front());
    for (MorId f : edges.class_members(i)) CHECK(edges.index_of(f) == i);
  }

  // The involution pair: two singleton classes under the pattern, and the
  // two ambient automorphisms collapse into one class of size two.
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  const SubobjectSet ab(pair, 0, 1);
  CHECK(ab.class_count() == 2);
  const SubobjectSet bb(pair, 1, 1);
  CHECK(bb.class_count() == 1);
  CHECK(bb.class_members(0).size() == 2);

  CHECK_THROWS_AS(ab.index_of(pair.morphism_index("sigma")), ValidationError);
}

TEST_CASE("the class map of a chain embedding moves image subsets") {
  const StructureCategory chains(
      "chains", {Structure::chain(2), Structure::chain(3), Structure::chain(4)});
  const SubobjectSet sb(chains, 0, 1);
  const SubobjectSet st(chains, 0, 2);
  REQUIRE(st.class_count() == 6);

  // w : chain3 -> chain4 with image {0, 1, 3}.
  MorId w = -1;
  for (MorId m : chains.hom(1, 2))
    if (chains.morphism_map(m) == std::vector<int>{0, 1, 3}) w = m;
  REQUIRE(w >= 0);

  const std::vector<int> cm = subobject_class_map(sb, st, w);
  CHECK(cm == std::vector<int>{subset_index(4, 0, 1), subset_index(4, 0, 3),
                               subset_index(4, 1, 3)});
  CHECK(cm == std::vector<int>{0, 2, 4});

  // Independent check against composed vertex maps, class by class.
  for (int i = 0; i < sb.class_count(); ++i) {
    const MorId g = sb.representative(i);
    const auto& img = chains.morphism_map(chains.compose(w, g));
    CHECK(cm[static_cast<std::size_t>(i)] ==
          subset_index(4, std::min(img[0], img[1]), std::max(img[0], img[1])));
  }
}

TEST_CASE("pullbacks keep exactly the nonempty preimage blocks") {
  const StructureCategory chains(
      "chains", {Structure::chain(2), Structure::chain(3), Structure::chain(4)});
  const SubobjectSet sb(chains, 0, 1);
  const SubobjectSet st(chains, 0, 2);
  MorId w = -1;
  for (MorId m : chains.hom(1, 2))
    if (chains.morphism_map(m) == std::vector<int>{0, 1, 3}) w = m;
  REQUIRE(w >= 0);

  const PulledPartition separate =
      pullback(sb, st, w, Partition::parse_rgs("001122"));
  CHECK(separate.partition == Partition::parse_rgs("012"));
  const PulledPartition merged =
      pullback(sb, st, w, Partition::parse_rgs("010101"));
  CHECK(merged.partition == Partition::parse_rgs("000"));
  const PulledPartition mixed =
      pullback(sb, st, w, Partition::parse_rgs("011000"));
  CHECK(mixed.partition == Partition::parse_rgs("010"));

  // Convenience overload builds the same subobject sets.
  const PulledPartition conv =
      pullback(chains, 0, w, Partition::parse_rgs("011000"));
  CHECK(conv.partition == mixed.partition);
  CHECK(conv.class_map == mixed.class_map);

  // Trivial pulls back to trivial; discrete to the class-map fibers.
  CHECK(pullback(sb, st, w, Partition::trivial(6)).partition ==
        Partition::trivial(3));
  CHECK(pullback(sb, st, w, Partition::discrete(6)).partition ==
        Partition::discrete(3));

  CHECK_THROWS_AS(pullback(sb, st, w, Partition::discrete(5)),
                  ValidationError);
}

TEST_CASE("pullback by map handles non-surjective class maps") {
  const Partition pi = Partition::parse_rgs("0011");
  CHECK(pullback_by_map({0, 3}, pi) == Partition::parse_rgs("01"));
  CHECK(pullback_by_map({1, 0, 1}, pi) == Partition::parse_rgs("000"));
  CHECK(pullback_by_map({3, 3, 0}, pi) == Partition::parse_rgs("001"));
}

TEST_CASE("the pullback calculus verifies on chain and graph instances") {
  const StructureCategory chains(
      "chains", {Structure::chain(2), Structure::chain(3), Structure::chain(4)});
  for (MorId w : chains.hom(1, 2)) {
    const BasicPropsReport r = check_basic_props(chains, 0, 1, 2, w);
    CHECK(r.passed);
    CHECK(r.violations.empty());
    CHECK(r.partitions_checked > 0);
    CHECK(!r.sampled);
  }

  const StructureCategory graphs(
      "graphs", {Structure::complete_graph(2), Structure::path_graph(3),
                 Structure::cycle_graph(4)});
  REQUIRE(!graphs.hom(1, 2).empty());
  const BasicPropsReport r =
      check_basic_props(graphs, 0, 1, 2, graphs.hom(1, 2).front());
  CHECK(r.passed);
  CHECK(r.class_pairs_checked > 0);
}
