#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramseylab/corpus.hpp"
#include "ramseylab/errors.hpp"
#include "ramseylab/fincat.hpp"
#include "ramseylab/functors.hpp"
#include "ramseylab/ramsey.hpp"

using namespace ramseylab;

namespace {

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const FinCategory& corpus_cat(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e.cat;
  REQUIRE(false);
  return corpus().front().cat;
}

EntropyConfig boltzmann_config() {
  return {EntropyKind::boltzmann, EssentialMode{false, 0}, kDefaultBellBudget};
}

}  // namespace

TEST_CASE("the identity functor validates and changes nothing") {
  const FinCategory& e = corpus_cat("E");
  const FunctorTable id = identity_functor(e);
  const FunctorProperties props = functor_properties(id);
  CHECK(props.finitary);
  CHECK(props.reasonable);
  CHECK(props.unique_restrictions);
  CHECK(props.expansion);
  CHECK(props.target_directed);
  for (const auto& line : props.fiber_sizes)
    CHECK(line.find(": 1") != std::string::npos);

  const SuiteReport r =
      entropy_nondecreasing_check(id, boltzmann_config(), EnforcementMode::strict);
  CHECK(r.passed);
  CHECK(r.violations.empty());
}

TEST_CASE("functor validation rejects a map that breaks composition") {
  const FinCategory& e = corpus_cat("E");
  std::vector<int> objects{0, 1};
  std::unordered_map<MorId, MorId> morphisms;
  for (int i = 0; i < e.morphism_count(); ++i) morphisms[i] = i;
  // Send the involution to the identity but keep f1, f2 apart: the square
  // sigma . f1 = f2 no longer commutes.
  morphisms[e.morphism_index("sigma")] = e.morphism_index("idB");
  try {
    validate_functor(e, e, std::move(objects), std::move(morphisms));
    FAIL("expected a validation error");
  } catch (const ValidationError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("sigma") != std::string::npos);
    CHECK(msg.find("f1") != std::string::npos);
  }
}

TEST_CASE("functor validation rejects partial maps") {
  const FinCategory& e = corpus_cat("E");
  std::unordered_map<MorId, MorId> missing;
  for (int i = 0; i < e.morphism_count(); ++i)
    if (e.morphism_name(i) != "f2") missing[i] = i;
  CHECK_THROWS_AS(validate_functor(e, e, std::vector<int>{0, 1},
                                   std::move(missing)),
                  ValidationError);
}

TEST_CASE("the collapse functor folds the doubled pair onto the pair") {
  const FinCategory& edup = corpus_cat("Edup");
  const FinCategory& e = corpus_cat("E");
  const FunctorTable u = collapse_functor(edup, e);

  const FunctorProperties props = functor_properties(u);
  CHECK(props.finitary);
  CHECK(props.reasonable);
  CHECK(props.target_directed);
  // Both doubled objects restrict the identity of the folded object: the
  // restriction is not unique.
  CHECK(!props.unique_restrictions);
  CHECK(props.unique_witness.find("2 fiber objects") != std::string::npos);

  // Strict mode refuses to certify; observe mode records and compares.
  CHECK_THROWS_AS(entropy_nondecreasing_check(u, boltzmann_config(),
                                              EnforcementMode::strict),
                  ValidationError);
  const SuiteReport r = entropy_nondecreasing_check(u, boltzmann_config(),
                                                    EnforcementMode::observe);
  CHECK(r.passed);
  CHECK(r.violations.empty());
  bool recorded = false;
  for (const auto& line : r.lines)
    if (line.find("observe mode") != std::string::npos) recorded = true;
  CHECK(recorded);

  // Fiber degree sums match on both folded objects.
  bool matched_a = false, matched_b = false;
  for (const auto& line : r.lines) {
    if (line.find("A") != std::string::npos &&
        line.find("(match)") != std::string::npos)
      matched_a = true;
    if (line.find("B") != std::string::npos &&
        line.find("(match)") != std::string::npos)
      matched_b = true;
  }
  CHECK(matched_a);
  CHECK(matched_b);
}

TEST_CASE("order-forgetting on two vertices: fibers count vertex orders") {
  const OrderForgettingInstance inst = order_forgetting_functor(2);
  CHECK(inst.ordered->cat.object_count() == 1 + 2 * 2);
  CHECK(inst.plain->object_count() == 1 + 2);

  const FunctorProperties props = functor_properties(inst.table);
  CHECK(props.finitary);
  std::unordered_map<std::string, int> sizes;
  for (const auto& line : props.fiber_sizes) {
    const auto colon = line.rfind(": ");
    REQUIRE(colon != std::string::npos);
    sizes[line.substr(0, colon)] = std::stoi(line.substr(colon + 2));
  }
  REQUIRE(sizes.size() == 3);
  int singles = 0, doubles = 0;
  for (const auto& [name, count] : sizes)
    (count == 1 ? singles : doubles) += 1;
  CHECK(singles == 1);  // the one-vertex graph carries one order
  CHECK(doubles == 2);  // both two-vertex graphs carry two orders

  const SuiteReport r = entropy_nondecreasing_check(
      inst.table, boltzmann_config(), EnforcementMode::observe);
  CHECK(r.passed);
  CHECK(r.violations.empty());
}

TEST_CASE("functor files load, resolve relative paths, and validate") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("functor-io-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const FinCategory& edup = corpus_cat("Edup");
  const FinCategory& e = corpus_cat("E");
  {
    std::ofstream(dir / "Edup.json") << category_to_json_text(edup.to_data());
    std::ofstream(dir / "E.json") << category_to_json_text(e.to_data());
    const FunctorTable u = collapse_functor(edup, e);
    std::string objects, morphisms;
    for (int a = 0; a < edup.object_count(); ++a) {
      objects += std::string(objects.empty() ? "" : ",\n") + "    \"" +
                 edup.object_name(a) + "\": \"" +
                 e.object_name(u.object_map[static_cast<std::size_t>(a)]) + "\"";
    }
    for (int m = 0; m < edup.morphism_count(); ++m) {
      morphisms += std::string(morphisms.empty() ? "" : ",\n") + "    \"" +
                   edup.morphism_name(m) + "\": \"" +
                   e.morphism_name(u.morphism_map.at(m)) + "\"";
    }
    std::ofstream(dir / "collapse.json")
        << "{\n  \"source\": \"Edup.json\",\n  \"target\": \"E.json\",\n"
        << "  \"objects\": {\n" << objects << "\n  },\n"
        << "  \"morphisms\": {\n" << morphisms << "\n  }\n}\n";
  }

  const LoadedFunctor loaded =
      functor_from_json_file((dir / "collapse.json").string());
  CHECK(loaded.source->name() == "Edup");
  CHECK(loaded.target->name() == "E");
  const FunctorProperties props = functor_properties(loaded.table);
  CHECK(props.reasonable);
  CHECK(!props.unique_restrictions);

  // A file that forgets an object mapping is rejected.
  {
    std::ofstream(dir / "partial.json")
        << "{\n  \"source\": \"Edup.json\",\n  \"target\": \"E.json\",\n"
        << "  \"objects\": {\"A\": \"A\"},\n  \"morphisms\": {}\n}\n";
  }
  CHECK_THROWS_AS(functor_from_json_file((dir / "partial.json").string()),
                  ValidationError);
  std::filesystem::remove_all(dir);
}
