#include "ramseylab/corpus.hpp"

#include <filesystem>
#include <fstream>

namespace ramseylab {

namespace {

using Data = CategoryData;

// Two objects A, B with hom(B,B) a group G, hom(A,B) a free transitive
// G-set under postcomposition and hom(A,A) = {idA}. The group is given by
// its multiplication table; element 0 is the unit.
Data torsor_data(const std::string& name, const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  Data d;
  d.name = name;
  d.objects = {"A", "B"};
  d.morphisms.push_back({"idA", "A", "A"});
  for (int i = 0; i < n; ++i)
    d.morphisms.push_back({"g" + std::to_string(i), "B", "B"});
  for (int i = 0; i < n; ++i)
    d.morphisms.push_back({"f" + std::to_string(i), "A", "B"});
  d.identities = {{"A", "idA"}, {"B", "g0"}};
  auto g = [](int i) { return "g" + std::to_string(i); };
  auto f = [](int i) { return "f" + std::to_string(i); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      d.compose.push_back({g(a), g(b), g(mul[a][b])});
      d.compose.push_back({g(a), f(b), f(mul[a][b])});
    }
  return d;
}

// One object with an invertible endomorphism monoid (a group).
Data group_data(const std::string& name, const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  Data d;
  d.name = name;
  d.objects = {"B"};
  for (int i = 0; i < n; ++i)
    d.morphisms.push_back({"g" + std::to_string(i), "B", "B"});
  d.identities = {{"B", "g0"}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.compose.push_back({"g" + std::to_string(a), "g" + std::to_string(b),
                           "g" + std::to_string(mul[a][b])});
  return d;
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return mul;
}

std::vector<std::vector<int>> klein_table() {
  std::vector<std::vector<int>> mul(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a ^ b;
  return mul;
}

// E, the standing two-object worked example: hom(B,B) = {idB, sigma} with
// sigma an involution swapping the two maps A -> B.
Data e_data() {
  Data d;
  d.name = "E";
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

// E with the involution removed: the span (f1, f2) can no longer be closed,
// so amalgamation fails while both degrees stay computable.
Data eprime_data() {
  Data d;
  d.name = "Eprime";
  d.objects = {"A", "B"};
  d.morphisms = {{"idA", "A", "A"},
                 {"idB", "B", "B"},
                 {"f1", "A", "B"},
                 {"f2", "A", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}};
  return d;
}

// Free but intransitive involution action: hom(A,B) splits into two orbits
// {f1,f2} and {f3,f4}, so spans across orbits cannot be amalgamated.
Data etilde_data() {
  Data d;
  d.name = "Etilde";
  d.objects = {"A", "B"};
  d.morphisms = {{"idA", "A", "A"}, {"idB", "B", "B"}, {"sigma", "B", "B"},
                 {"f1", "A", "B"},  {"f2", "A", "B"},  {"f3", "A", "B"},
                 {"f4", "A", "B"}};
  d.identities = {{"A", "idA"}, {"B", "idB"}};
  d.compose = {{"sigma", "sigma", "idB"},
               {"sigma", "f1", "f2"},
               {"sigma", "f2", "f1"},
               {"sigma", "f3", "f4"},
               {"sigma", "f4", "f3"}};
  return d;
}

// E with the large object duplicated into two isomorphic copies B1, B2.
// hom(Bi,Bj) = {g<i><j>0, g<i><j>1} composing by xor on the last digit;
// f<j><d>: A -> Bj with g<j><k><e> . f<j><d> = f<k><e xor d>. The collapse
// functor onto E forgets the copy index.
Data edup_data() {
  Data d;
  d.name = "Edup";
  d.objects = {"A", "B1", "B2"};
  d.morphisms.push_back({"idA", "A", "A"});
  auto g = [](int i, int j, int e) {
    return "g" + std::to_string(i) + std::to_string(j) + std::to_string(e);
  };
  auto f = [](int j, int dd) { return "f" + std::to_string(j) + std::to_string(dd); };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int e = 0; e < 2; ++e)
        d.morphisms.push_back({g(i, j, e), "B" + std::to_string(i), "B" + std::to_string(j)});
  for (int j = 1; j <= 2; ++j)
    for (int dd = 0; dd < 2; ++dd)
      d.morphisms.push_back({f(j, dd), "A", "B" + std::to_string(j)});
  d.identities = {{"A", "idA"}, {"B1", "g110"}, {"B2", "g220"}};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int e = 0; e < 2; ++e)
          for (int dd = 0; dd < 2; ++dd)
            d.compose.push_back({g(j, k, e), g(i, j, dd), g(i, k, e ^ dd)});
  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k)
      for (int e = 0; e < 2; ++e)
        for (int dd = 0; dd < 2; ++dd)
          d.compose.push_back({g(j, k, e), f(j, dd), f(k, e ^ dd)});
  return d;
}

Data chain_data(const std::string& name, int len) {
  Data d;
  d.name = name;
  for (int i = 0; i < len; ++i) d.objects.push_back("X" + std::to_string(i));
  for (int i = 0; i < len; ++i)
    d.morphisms.push_back({"id" + std::to_string(i), d.objects[static_cast<std::size_t>(i)],
                           d.objects[static_cast<std::size_t>(i)]});
  auto step = [](int i, int j) {
    return "a" + std::to_string(i) + std::to_string(j);
  };
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j)
      d.morphisms.push_back({step(i, j), d.objects[static_cast<std::size_t>(i)],
                             d.objects[static_cast<std::size_t>(j)]});
  for (int i = 0; i < len; ++i)
    d.identities[d.objects[static_cast<std::size_t>(i)]] = "id" + std::to_string(i);
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j)
      for (int k = j + 1; k < len; ++k)
        d.compose.push_back({step(j, k), step(i, j), step(i, k)});
  return d;
}

Data diamond_data() {
  Data d;
  d.name = "diamond";
  d.objects = {"X", "Y1", "Y2", "Z"};
  d.morphisms = {{"idX", "X", "X"},  {"idY1", "Y1", "Y1"}, {"idY2", "Y2", "Y2"},
                 {"idZ", "Z", "Z"},  {"a", "X", "Y1"},     {"b", "X", "Y2"},
                 {"c", "Y1", "Z"},   {"d", "Y2", "Z"},     {"e", "X", "Z"}};
  d.identities = {{"X", "idX"}, {"Y1", "idY1"}, {"Y2", "idY2"}, {"Z", "idZ"}};
  d.compose = {{"c", "a", "e"}, {"d", "b", "e"}};
  return d;
}

Data vee_data() {
  Data d;
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

Data parallel_data(const std::string& name, int arrows) {
  Data d;
  d.name = name;
  d.objects = {"X", "Y"};
  d.morphisms = {{"idX", "X", "X"}, {"idY", "Y", "Y"}};
  for (int i = 1; i <= arrows; ++i)
    d.morphisms.push_back({"p" + std::to_string(i), "X", "Y"});
  d.identities = {{"X", "idX"}, {"Y", "idY"}};
  return d;
}

CorpusEntry make(Data data, bool amalgamation, bool directed) {
  return CorpusEntry{data.name, FinCategory::validate(data), amalgamation,
                     directed};
}

}  // namespace

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(make(e_data(), true, true));
  out.push_back(make(eprime_data(), false, true));
  out.push_back(make(etilde_data(), false, true));
  out.push_back(make(edup_data(), true, true));
  out.push_back(make(torsor_data("TZ3", cyclic_table(3)), true, true));
  out.push_back(make(torsor_data("TZ4", cyclic_table(4)), true, true));
  out.push_back(make(torsor_data("TV4", klein_table()), true, true));
  out.push_back(make(group_data("GZ2", cyclic_table(2)), true, true));
  out.push_back(make(group_data("GZ3", cyclic_table(3)), true, true));
  out.push_back(make(group_data("GZ4", cyclic_table(4)), true, true));
  out.push_back(make(group_data("GV4", klein_table()), true, true));
  out.push_back(make(chain_data("chain2", 2), true, true));
  out.push_back(make(chain_data("chain3", 3), true, true));
  out.push_back(make(diamond_data(), true, true));
  out.push_back(make(vee_data(), false, false));
  out.push_back(make(parallel_data("P3par", 3), false, true));
  out.push_back(make(parallel_data("P4par", 4), false, true));
  return out;
}

std::vector<CorpusCategory> corpus_views(const std::vector<CorpusEntry>& entries) {
  std::vector<CorpusCategory> views;
  views.reserve(entries.size());
  for (const auto& e : entries) views.push_back({&e.cat, e.amalgamation});
  return views;
}

std::vector<std::string> write_corpus(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (const auto& entry : build_corpus()) {
    const std::string file = entry.name + ".json";
    std::ofstream out(std::filesystem::path(dir) / file,
                      std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write corpus file " + file + " in " + dir);
    out << category_to_json_text(entry.cat.to_data());
    names.push_back(file);
  }
  return names;
}

FunctorTable collapse_functor(const FinCategory& edup, const FinCategory& e) {
  std::vector<int> object_map(static_cast<std::size_t>(edup.object_count()));
  for (int a = 0; a < edup.object_count(); ++a) {
    const std::string& n = edup.object_name(a);
    if (n == "A")
      object_map[static_cast<std::size_t>(a)] = e.object_index("A");
    else if (n == "B1" || n == "B2")
      object_map[static_cast<std::size_t>(a)] = e.object_index("B");
    else
      throw ValidationError("collapse functor expects objects A, B1, B2; saw " + n);
  }
  std::unordered_map<MorId, MorId> morphism_map;
  for (MorId m = 0; m < edup.morphism_count(); ++m) {
    const std::string n = edup.morphism_name(m);
    std::string image;
    if (n == "idA")
      image = "idA";
    else if (n.size() == 4 && n[0] == 'g')
      image = (n[3] == '0') ? "idB" : "sigma";
    else if (n.size() == 3 && n[0] == 'f')
      image = (n[2] == '0') ? "f1" : "f2";
    else
      throw ValidationError("collapse functor cannot place morphism " + n);
    morphism_map[m] = e.morphism_index(image);
  }
  return validate_functor(edup, e, std::move(object_map), std::move(morphism_map));
}

}  // namespace ramseylab
