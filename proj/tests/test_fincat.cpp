#include <doctest.h>

#include <string>
#include <vector>

#include "ramseylab/errors.hpp"
#include "ramseylab/fincat.hpp"
#include "ramseylab/structures.hpp"

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

}  // namespace

TEST_CASE("validation fills identity compositions and indexes hom-sets") {
  const FinCategory cat = FinCategory::validate(involution_pair_data());
  CHECK(cat.object_count() == 2);
  CHECK(cat.morphism_count() == 5);

  const int a = cat.object_index("A"), b = cat.object_index("B");
  const auto& ab = cat.hom(a, b);
  REQUIRE(ab.size() == 2);
  CHECK(cat.morphism_name(ab[0]) == "f1");  // declaration order
  CHECK(cat.morphism_name(ab[1]) == "f2");
  CHECK(cat.hom_position(ab[1]) == 1);

  const MorId f1 = cat.morphism_index("f1");
  const MorId sigma = cat.morphism_index("sigma");
  CHECK(cat.compose(cat.identity(b), f1) == f1);   // filled, not declared
  CHECK(cat.compose(f1, cat.identity(a)) == f1);
  CHECK(cat.morphism_name(cat.compose(sigma, f1)) == "f2");
  CHECK(cat.mor_dom(f1) == a);
  CHECK(cat.mor_cod(f1) == b);
}

TEST_CASE("a broken involution square fails associativity with a witness") {
  CategoryData d = involution_pair_data();
  d.compose[0] = {"sigma", "sigma", "sigma"};  // sigma is no longer involutive
  try {
    FinCategory::validate(d);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("assoc") != std::string::npos);
    CHECK(msg.find("sigma") != std::string::npos);
    CHECK(msg.find("f1") != std::string::npos);
  }
}

TEST_CASE("missing and conflicting table entries are named") {
  CategoryData missing = involution_pair_data();
  missing.compose.erase(missing.compose.begin() + 1);  // drop sigma . f1
  CHECK_THROWS_AS(FinCategory::validate(missing), ValidationError);

  CategoryData conflict = involution_pair_data();
  conflict.compose.push_back({"idB", "f1", "f2"});  // contradicts identity law
  CHECK_THROWS_AS(FinCategory::validate(conflict), ValidationError);

  CategoryData dangling = involution_pair_data();
  dangling.morphisms.push_back({"g", "A", "Z"});
  CHECK_THROWS_AS(FinCategory::validate(dangling), ValidationError);

  CategoryData unidentified = involution_pair_data();
  unidentified.identities.erase("B");
  CHECK_THROWS_AS(FinCategory::validate(unidentified), ValidationError);
}

TEST_CASE("JSON round trip preserves the category data") {
  const CategoryData d = involution_pair_data();
  const CategoryData back = category_from_json_text(category_to_json_text(d));
  CHECK(back.name == d.name);
  CHECK(back.objects == d.objects);
  REQUIRE(back.morphisms.size() == d.morphisms.size());
  for (std::size_t i = 0; i < d.morphisms.size(); ++i) {
    CHECK(back.morphisms[i].id == d.morphisms[i].id);
    CHECK(back.morphisms[i].dom == d.morphisms[i].dom);
    CHECK(back.morphisms[i].cod == d.morphisms[i].cod);
  }
  CHECK(back.identities == d.identities);
  const FinCategory cat = FinCategory::validate(back);
  CHECK(cat.morphism_count() == 5);
}

TEST_CASE("products pair objects and morphisms componentwise") {
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  const FinCategory prod = product(pair, pair);
  CHECK(prod.object_count() == 4);
  CHECK(prod.morphism_count() == 25);
  CHECK(check_category_laws(prod).holds);

  // hom sizes multiply.
  const int aa = 0, bb = 3;  // row-major pair order
  CHECK(prod.hom(aa, bb).size() == 4);
  CHECK(prod.hom(bb, bb).size() == 4);

  const FinCategory sq = power(pair, 2);
  CHECK(sq.object_count() == 4);
  CHECK(sq.morphism_count() == 25);
  CHECK(check_category_laws(sq).holds);
}

TEST_CASE("materialization copies a lazy view into an explicit table") {
  const StructureCategory view(
      "paths", {Structure::chain(1), Structure::chain(2), Structure::chain(3)});
  const FinCategory copy = materialize(view, "paths-table");
  CHECK(copy.object_count() == 3);
  CHECK(check_category_laws(copy).holds);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(copy.hom(x, y).size() == view.hom(x, y).size());
  CHECK(copy.mono_certified());
}

TEST_CASE("state tuples concatenate with the star operation") {
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  const StateSpace space(pair, 2);
  const FinCategory& cat = space.category();
  CHECK(cat.object_count() == 2 + 4);
  CHECK(check_category_laws(cat).holds);

  const int ta = space.tuple_object({0});
  const int tb = space.tuple_object({1});
  const int tab = space.star(ta, tb);
  CHECK(space.object_tuple(tab) == std::vector<int>{0, 1});

  const MorId f1 = cat.morphism_index("(f1)");
  const MorId sigma = cat.morphism_index("(sigma)");
  const MorId joined = space.star_mor(f1, sigma);
  CHECK(cat.mor_dom(joined) == space.star(ta, tb));
  CHECK(cat.mor_cod(joined) == space.star(tb, tb));
}

TEST_CASE("extension witnesses close involution spans and refuse rigid ones") {
  const FinCategory pair = FinCategory::validate(involution_pair_data());
  const int a = pair.object_index("A"), b = pair.object_index("B");
  const auto w = amalgamate_ext(pair, a, b, b, pair.morphism_index("f1"));
  REQUIRE(w.has_value());
  CHECK(w->D == b);

  CategoryData rigid = involution_pair_data();
  rigid.morphisms.erase(rigid.morphisms.begin() + 2);  // drop sigma
  rigid.compose.clear();
  const FinCategory r = FinCategory::validate(rigid);
  CHECK(!amalgamate_ext(r, a, b, b, r.morphism_index("f1")).has_value());
}
