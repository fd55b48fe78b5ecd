#include <doctest.h>

#include <string>
#include <vector>

#include "ramseylab/category.hpp"
#include "ramseylab/fincat.hpp"

using namespace ramseylab;

namespace {

// Two objects; the ambient object carries an involution that swaps the two
// arrows from the pattern object. The running worked example.
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

// Same shape without the involution: the span (f1, f2) cannot be closed.
CategoryData rigid_pair_data() {
  CategoryData d;
  d.name = "rigid-pair";
  d.objects = {"A", "B"};
  d.morphisms = {{"idA", "A", "A"},
                 {"idB", "B", "B"},
                 {"f1", "A", "B"},
                 {"f2", "A", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}};
  return d;
}

// X -> Y1, X -> Y2 with no common target above Y1, Y2.
CategoryData vee_data() {
  CategoryData d;
  d.name = "vee";
  d.objects = {"X", "Y1", "Y2"};
  d.morphisms = {{"idX", "X", "X"},
                 {"idY1", "Y1", "Y1"},
                 {"idY2", "Y2", "Y2"},
                 {"a", "X", "Y1"},
                 {"b", "X", "Y2"}};
  d.identities = {{"X", "idX"}, {"Y1", "idY1"}, {"Y2", "idY2"}};
  return d;
}

// A non-identity idempotent endomorphism is never mono.
CategoryData idempotent_data() {
  CategoryData d;
  d.name = "idempotent";
  d.objects = {"X", "Y"};
  d.morphisms = {{"idX", "X", "X"},
                 {"idY", "Y", "Y"},
                 {"e", "X", "X"},
                 {"f", "X", "Y"}};
  d.identities = {{"X", "idX"}, {"Y", "idY"}};
  d.compose = {{"e", "e", "e"}, {"f", "e", "f"}};
  return d;
}

// Two isomorphic objects.
CategoryData iso_pair_data() {
  CategoryData d;
  d.name = "iso-pair";
  d.objects = {"X", "Y"};
  d.morphisms = {{"idX", "X", "X"},
                 {"idY", "Y", "Y"},
                 {"u", "X", "Y"},
                 {"v", "Y", "X"}};
  d.identities = {{"X", "idX"}, {"Y", "idY"}};
  d.compose = {{"v", "u", "idX"}, {"u", "v", "idY"}};
  return d;
}

}  // namespace

TEST_CASE("automorphism extraction finds exactly the invertible endos") {
  const FinCategory cat = FinCategory::validate(involution_pair_data());
  const auto auts_b = aut(cat, cat.object_index("B"));
  REQUIRE(auts_b.size() == 2);
  CHECK(cat.morphism_name(auts_b[0]) == "idB");
  CHECK(cat.morphism_name(auts_b[1]) == "sigma");
  CHECK(aut(cat, cat.object_index("A")).size() == 1);
}

TEST_CASE("reachability and upsets follow nonempty hom-sets") {
  const FinCategory cat = FinCategory::validate(involution_pair_data());
  const int a = cat.object_index("A"), b = cat.object_index("B");
  CHECK(reaches(cat, a, b));
  CHECK(reaches(cat, a, a));
  CHECK(!reaches(cat, b, a));
  CHECK(upset(cat, a) == std::vector<int>{a, b});
  CHECK(upset(cat, b) == std::vector<int>{b});
}

TEST_CASE("the all-mono check accepts injective shapes, rejects idempotents") {
  const FinCategory good = FinCategory::validate(involution_pair_data());
  CHECK(check_all_mono(good).holds);
  CHECK(good.mono_certified());

  const FinCategory bad = FinCategory::validate(idempotent_data());
  const PredicateResult r = check_all_mono(bad);
  CHECK(!r.holds);
  CHECK(!bad.mono_certified());
  CHECK(!r.witness.empty());
  CHECK(r.witness.find("e") != std::string::npos);
}

TEST_CASE("directedness holds with a top object and fails on a vee") {
  CHECK(check_directed(FinCategory::validate(involution_pair_data())).holds);
  const PredicateResult r = check_directed(FinCategory::validate(vee_data()));
  CHECK(!r.holds);
  CHECK(r.witness.find("Y1") != std::string::npos);
  CHECK(r.witness.find("Y2") != std::string::npos);
}

TEST_CASE("amalgamation closes involution spans and fails rigid ones") {
  CHECK(check_amalgamation(FinCategory::validate(involution_pair_data())).holds);
  const PredicateResult r =
      check_amalgamation(FinCategory::validate(rigid_pair_data()));
  CHECK(!r.holds);
  CHECK(r.witness.find("f1") != std::string::npos);
  CHECK(r.witness.find("f2") != std::string::npos);
}

TEST_CASE("cofinality asks every object to reach the subset") {
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  CHECK(check_cofinal(pair, {pair.object_index("B")}).holds);

  const FinCategory v = FinCategory::validate(vee_data());
  const PredicateResult r = check_cofinal(v, {v.object_index("Y1")});
  CHECK(!r.holds);
  CHECK(r.witness.find("Y2") != std::string::npos);
}

TEST_CASE("object isomorphism needs a two-sided inverse pair") {
  const FinCategory iso = FinCategory::validate(iso_pair_data());
  CHECK(objects_isomorphic(iso, 0, 1));
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  CHECK(!objects_isomorphic(pair, 0, 1));
  CHECK(objects_isomorphic(pair, 1, 1));
}

TEST_CASE("category laws hold on validated and trusted-built tables") {
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  CHECK(check_category_laws(pair).holds);
  const FinCategory prod = product(pair, pair);
  CHECK(check_category_laws(prod).holds);
}
