#include "ramseylab/structures.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ramseylab {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::string hex_of(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

const char* structure_class_name(StructureClass cls) {
  switch (cls) {
    case StructureClass::graph: return "graph";
    case StructureClass::poset: return "poset";
    case StructureClass::linord: return "linord";
    case StructureClass::digraph: return "digraph";
  }
  throw Error("unknown structure class");
}

StructureClass structure_class_from_name(const std::string& name) {
  if (name == "graph") return StructureClass::graph;
  if (name == "poset") return StructureClass::poset;
  if (name == "linord") return StructureClass::linord;
  if (name == "digraph") return StructureClass::digraph;
  throw ValidationError("unknown structure class '" + name +
                        "' (expected graph, poset, linord, or digraph)");
}

Structure::Structure(StructureClass cls, int n, std::uint64_t bits)
    : cls_(cls), n_(n), bits_(bits) {
  if (n < 1 || n > kMaxVertices)
    throw ValidationError("structure size must be between 1 and " +
                          std::to_string(kMaxVertices) + ", got " + std::to_string(n));
  if (n * n < 64 && (bits >> (n * n)) != 0)
    throw ValidationError("relation bits set outside the " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
  auto at = [&](int i, int j) { return ((bits >> (i * n + j)) & 1u) != 0; };
  switch (cls) {
    case StructureClass::graph:
      for (int i = 0; i < n; ++i) {
        if (at(i, i))
          throw ValidationError("graph has a loop at vertex " + std::to_string(i));
        for (int j = 0; j < n; ++j)
          if (at(i, j) != at(j, i))
            throw ValidationError("graph relation not symmetric at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
      }
      break;
    case StructureClass::poset:
    case StructureClass::linord:
      for (int i = 0; i < n; ++i)
        if (!at(i, i))
          throw ValidationError("order not reflexive at " + std::to_string(i));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i != j && at(i, j) && at(j, i))
            throw ValidationError("order not antisymmetric on {" + std::to_string(i) +
                                  "," + std::to_string(j) + "}");
          if (cls == StructureClass::linord && i != j && !at(i, j) && !at(j, i))
            throw ValidationError("order not total on {" + std::to_string(i) + "," +
                                  std::to_string(j) + "}");
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (at(i, j) && at(j, k) && !at(i, k))
              throw ValidationError("order not transitive through (" +
                                    std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k) + ")");
      break;
    case StructureClass::digraph:
      for (int i = 0; i < n; ++i)
        if (at(i, i))
          throw ValidationError("directed graph has a loop at vertex " +
                                std::to_string(i));
      break;
  }
}

Structure Structure::from_pairs(StructureClass cls, int n,
                                const std::vector<std::pair<int, int>>& pairs) {
  if (n < 1 || n > kMaxVertices)
    throw ValidationError("structure size must be between 1 and " +
                          std::to_string(kMaxVertices) + ", got " + std::to_string(n));
  std::uint64_t bits = 0;
  auto set = [&](int i, int j) { bits |= std::uint64_t{1} << (i * n + j); };
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw ValidationError("relation pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside vertex range 0.." +
                            std::to_string(n - 1));
    set(i, j);
    if (cls == StructureClass::graph) set(j, i);
  }
  if (cls == StructureClass::poset || cls == StructureClass::linord) {
    for (int i = 0; i < n; ++i) set(i, i);
    auto at = [&](int i, int j) { return ((bits >> (i * n + j)) & 1u) != 0; };
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (at(i, k) && at(k, j)) set(i, j);
  }
  return Structure(cls, n, bits);
}

Structure Structure::chain(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  return from_pairs(StructureClass::linord, n, pairs);
}

Structure Structure::complete_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return from_pairs(StructureClass::graph, n, pairs);
}

Structure Structure::path_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  return from_pairs(StructureClass::graph, n, pairs);
}

Structure Structure::cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle graph needs at least 3 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({i, (i + 1) % n});
  return from_pairs(StructureClass::graph, n, pairs);
}

Structure Structure::empty_graph(int n) {
  return from_pairs(StructureClass::graph, n, {});
}

std::vector<std::vector<int>> embeddings(const Structure& a, const Structure& b,
                                         std::size_t budget) {
  if (a.structure_class() != b.structure_class())
    throw ValidationError("embedding endpoints have different structure classes");
  std::vector<std::vector<int>> out;
  const int na = a.size(), nb = b.size();
  if (na > nb) return out;
  std::vector<int> img(static_cast<std::size_t>(na), -1);
  std::vector<bool> used(static_cast<std::size_t>(nb), false);
  // Depth-first over positions; candidates ascend, so results come out in
  // lexicographic image-tuple order.
  int pos = 0;
  int cand = 0;
  while (pos >= 0) {
    if (pos == na) {
      if (out.size() >= budget)
        throw BudgetError("embedding count exceeds budget of " + std::to_string(budget));
      out.push_back(img);
      --pos;
      cand = img[static_cast<std::size_t>(pos)];
      used[static_cast<std::size_t>(cand)] = false;
      ++cand;
      continue;
    }
    bool advanced = false;
    for (; cand < nb; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      bool ok = true;
      for (int j = 0; j < pos && ok; ++j) {
        const int w = img[static_cast<std::size_t>(j)];
        if (a.rel(j, pos) != b.rel(w, cand) || a.rel(pos, j) != b.rel(cand, w))
          ok = false;
      }
      if (a.rel(pos, pos) != b.rel(cand, cand)) ok = false;
      if (!ok) continue;
      img[static_cast<std::size_t>(pos)] = cand;
      used[static_cast<std::size_t>(cand)] = true;
      ++pos;
      cand = 0;
      advanced = true;
      break;
    }
    if (!advanced) {
      --pos;
      if (pos >= 0) {
        cand = img[static_cast<std::size_t>(pos)];
        used[static_cast<std::size_t>(cand)] = false;
        ++cand;
      }
    }
  }
  return out;
}

std::size_t count_embeddings(const Structure& a, const Structure& b,
                             std::size_t budget) {
  return embeddings(a, b, budget).size();
}

std::size_t automorphism_count(const Structure& a) {
  return embeddings(a, a, 40320).size();
}

CanonicalForm canonical_form(const Structure& s) {
  const int n = s.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> best_perm = perm;
  do {
    std::uint64_t enc = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (s.rel(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))
          enc |= std::uint64_t{1} << (i * n + j);
    if (enc < best) {
      best = enc;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_perm};
}

bool are_isomorphic(const Structure& a, const Structure& b) {
  return a.structure_class() == b.structure_class() && a.size() == b.size() &&
         canonical_form(a).encoding == canonical_form(b).encoding;
}

std::string structure_default_name(const Structure& s) {
  const int n = s.size();
  switch (s.structure_class()) {
    case StructureClass::linord: return "chain" + std::to_string(n);
    case StructureClass::graph:
      return "g" + std::to_string(n) + "-" + hex_of(canonical_form(s).encoding);
    case StructureClass::poset:
      return "p" + std::to_string(n) + "-" + hex_of(canonical_form(s).encoding);
    case StructureClass::digraph:
      return "d" + std::to_string(n) + "-" + hex_of(canonical_form(s).encoding);
  }
  throw Error("unknown structure class");
}

int universe_default_max(StructureClass cls) {
  switch (cls) {
    case StructureClass::graph: return 7;
    case StructureClass::poset: return 6;
    case StructureClass::linord: return 8;
    case StructureClass::digraph: return 4;
  }
  throw Error("unknown structure class");
}

std::vector<Structure> structure_universe(StructureClass cls, int n_max) {
  if (n_max < 1) throw ValidationError("universe size bound must be at least 1");
  if (n_max > universe_default_max(cls))
    throw BudgetError("universe of " + std::string(structure_class_name(cls)) +
                      " structures capped at size " +
                      std::to_string(universe_default_max(cls)));
  std::vector<Structure> out;
  std::vector<Structure> prev;
  for (int n = 1; n <= n_max; ++n) {
    std::set<std::uint64_t> seen;
    std::vector<Structure> level;
    auto add_candidate = [&](std::uint64_t bits) {
      Structure cand(cls, n, bits);  // caller guarantees validity
      const std::uint64_t enc = canonical_form(cand).encoding;
      if (seen.insert(enc).second) level.push_back(Structure(cls, n, enc));
    };
    if (n == 1) {
      const bool refl = cls == StructureClass::poset || cls == StructureClass::linord;
      add_candidate(refl ? 1u : 0u);
    } else {
      const int k = n - 1;
      for (const Structure& base : prev) {
        std::uint64_t core = 0;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (base.rel(i, j)) core |= std::uint64_t{1} << (i * n + j);
        if (cls == StructureClass::poset || cls == StructureClass::linord)
          core |= std::uint64_t{1} << (k * n + k);
        const int patterns = cls == StructureClass::graph ? (1 << k) : (1 << (2 * k));
        for (int pat = 0; pat < patterns; ++pat) {
          std::uint64_t bits = core;
          for (int j = 0; j < k; ++j) {
            const bool out_rel = (pat >> j) & 1;
            const bool in_rel =
                cls == StructureClass::graph ? out_rel : ((pat >> (k + j)) & 1);
            if (out_rel) bits |= std::uint64_t{1} << (k * n + j);
            if (in_rel) bits |= std::uint64_t{1} << (j * n + k);
          }
          try {
            add_candidate(bits);
          } catch (const ValidationError&) {
            // extension pattern breaks a class law; skip
          }
        }
      }
    }
    std::sort(level.begin(), level.end(),
              [](const Structure& a, const Structure& b) { return a.bits() < b.bits(); });
    for (const auto& s : level) out.push_back(s);
    prev = std::move(level);
  }
  return out;
}

std::uint64_t linear_extension_count(const Structure& s) {
  if (s.structure_class() != StructureClass::poset &&
      s.structure_class() != StructureClass::linord)
    throw ValidationError("linear extensions are defined for ordered structures only");
  const int n = s.size();
  std::vector<std::uint64_t> dp(std::size_t{1} << n, 0);
  dp[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint64_t total = 0;
    for (int v = 0; v < n; ++v) {
      if (!((mask >> v) & 1)) continue;
      bool maximal = true;
      for (int w = 0; w < n && maximal; ++w)
        if (w != v && ((mask >> w) & 1) && s.rel(v, w)) maximal = false;
      if (maximal) total += dp[mask & ~(1u << v)];
    }
    dp[mask] = total;
  }
  return dp[(std::size_t{1} << n) - 1];
}

ExtNat structural_degree_oracle(const Structure& s) {
  const std::uint64_t auts = automorphism_count(s);
  switch (s.structure_class()) {
    case StructureClass::graph: {
      const std::uint64_t orders = factorial(s.size());
      if (orders % auts != 0)
        throw Error("internal: automorphism count does not divide the ordering count");
      return ExtNat(orders / auts);
    }
    case StructureClass::poset: {
      const std::uint64_t exts = linear_extension_count(s);
      if (exts % auts != 0)
        throw Error("internal: automorphism count does not divide the extension count");
      return ExtNat(exts / auts);
    }
    case StructureClass::linord:
      return ExtNat(1);
    case StructureClass::digraph:
      throw Error("no closed-form structural degree oracle for directed graphs");
  }
  throw Error("unknown structure class");
}

StructureCategory::StructureCategory(std::string name, std::vector<Structure> objects,
                                     std::size_t hom_budget)
    : name_(std::move(name)), objects_(std::move(objects)), hom_budget_(hom_budget) {
  if (objects_.empty()) throw ValidationError("structure category needs objects");
  if (hom_budget_ > 5000)
    throw ValidationError("hom-set budget cannot exceed the 5000 handle stride");
  for (std::size_t i = 1; i < objects_.size(); ++i)
    if (objects_[i].structure_class() != objects_[0].structure_class())
      throw ValidationError("structure category mixes structure classes");
  std::map<std::string, int> seen;
  for (const auto& s : objects_) {
    std::string base = structure_default_name(s);
    int& count = seen[base];
    ++count;
    names_.push_back(count == 1 ? base : base + "#" + std::to_string(count));
    canon_.push_back(canonical_form(s).encoding);
  }
  cache_.resize(objects_.size() * objects_.size());
}

const StructureCategory::HomData& StructureCategory::hom_data(int dom, int cod) const {
  const std::size_t slot = static_cast<std::size_t>(dom) * objects_.size() +
                           static_cast<std::size_t>(cod);
  std::lock_guard<std::mutex> lock(mu_);
  if (!cache_[slot]) {
    auto data = std::make_unique<HomData>();
    data->maps = embeddings(objects_[static_cast<std::size_t>(dom)],
                            objects_[static_cast<std::size_t>(cod)], hom_budget_);
    const MorId base = static_cast<MorId>(slot) * 5000;
    for (std::size_t p = 0; p < data->maps.size(); ++p)
      data->ids.push_back(base + static_cast<MorId>(p));
    cache_[slot] = std::move(data);
  }
  return *cache_[slot];
}

const std::vector<MorId>& StructureCategory::hom(int dom, int cod) const {
  if (dom < 0 || cod < 0 || dom >= object_count() || cod >= object_count())
    throw Error("hom: object index out of range");
  return hom_data(dom, cod).ids;
}

int StructureCategory::mor_dom(MorId m) const {
  const MorId pair = m / 5000;
  if (m < 0 || pair >= static_cast<MorId>(objects_.size() * objects_.size()))
    throw Error("bad morphism handle " + std::to_string(m));
  return static_cast<int>(pair / static_cast<MorId>(objects_.size()));
}

int StructureCategory::mor_cod(MorId m) const {
  const MorId pair = m / 5000;
  if (m < 0 || pair >= static_cast<MorId>(objects_.size() * objects_.size()))
    throw Error("bad morphism handle " + std::to_string(m));
  return static_cast<int>(pair % static_cast<MorId>(objects_.size()));
}

const std::vector<int>& StructureCategory::morphism_map(MorId m) const {
  const auto& data = hom_data(mor_dom(m), mor_cod(m));
  const std::size_t pos = static_cast<std::size_t>(m % 5000);
  if (pos >= data.maps.size()) throw Error("bad morphism handle " + std::to_string(m));
  return data.maps[pos];
}

std::string StructureCategory::morphism_name(MorId m) const {
  const auto& map = morphism_map(m);
  std::string s = object_name(mor_dom(m)) + "->" + object_name(mor_cod(m)) + "@[";
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(map[i]);
  }
  return s + "]";
}

MorId StructureCategory::compose(MorId g, MorId f) const {
  const int A = mor_dom(f), B = mor_cod(f), C = mor_cod(g);
  if (B != mor_dom(g))
    throw Error("compose: morphisms not composable: " + morphism_name(g) + " . " +
                morphism_name(f));
  const auto& fm = morphism_map(f);
  const auto& gm = morphism_map(g);
  std::vector<int> comp(fm.size());
  for (std::size_t i = 0; i < fm.size(); ++i)
    comp[i] = gm[static_cast<std::size_t>(fm[i])];
  const auto& data = hom_data(A, C);
  auto it = std::lower_bound(data.maps.begin(), data.maps.end(), comp);
  if (it == data.maps.end() || *it != comp)
    throw Error("internal: composite embedding missing from hom-set");
  return data.ids[static_cast<std::size_t>(it - data.maps.begin())];
}

MorId StructureCategory::identity(int obj) const {
  std::vector<int> id(static_cast<std::size_t>(objects_[static_cast<std::size_t>(obj)].size()));
  std::iota(id.begin(), id.end(), 0);
  const auto& data = hom_data(obj, obj);
  auto it = std::lower_bound(data.maps.begin(), data.maps.end(), id);
  if (it == data.maps.end() || *it != id)
    throw Error("internal: identity embedding missing from hom-set");
  return data.ids[static_cast<std::size_t>(it - data.maps.begin())];
}

int StructureCategory::hom_position(MorId m) const {
  return static_cast<int>(m % 5000);
}

std::optional<int> StructureCategory::find_isomorphic(const Structure& s) const {
  if (s.structure_class() != objects_[0].structure_class()) return std::nullopt;
  const std::uint64_t enc = canonical_form(s).encoding;
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i].size() == s.size() && canon_[i] == enc) return static_cast<int>(i);
  return std::nullopt;
}

namespace {

const char* relation_key(StructureClass cls) {
  switch (cls) {
    case StructureClass::graph: return "edge";
    case StructureClass::poset:
    case StructureClass::linord: return "le";
    case StructureClass::digraph: return "arc";
  }
  throw Error("unknown structure class");
}

}  // namespace

Structure structure_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("structure JSON: ") + e.what());
  }
  try {
    const StructureClass cls = structure_class_from_name(j.at("class").get<std::string>());
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> pairs;
    if (j.contains("relations")) {
      const auto& rel = j.at("relations");
      const std::string key = relation_key(cls);
      for (const auto& [k, v] : rel.items()) {
        if (k != key)
          throw ValidationError("structure JSON: relation key '" + k + "' invalid for " +
                                structure_class_name(cls) + " (expected '" + key + "')");
        for (const auto& p : v) {
          if (!p.is_array() || p.size() != 2)
            throw ValidationError("structure JSON: relation entries must be [i, j] pairs");
          pairs.push_back({p[0].get<int>(), p[1].get<int>()});
        }
      }
    }
    return Structure::from_pairs(cls, n, pairs);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("structure JSON: ") + e.what());
  }
}

Structure structure_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open structure file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return structure_from_json_text(ss.str());
}

std::string structure_to_json_text(const Structure& s) {
  nlohmann::json j;
  j["class"] = structure_class_name(s.structure_class());
  j["n"] = s.size();
  auto pairs = nlohmann::json::array();
  const bool upper_only = s.structure_class() == StructureClass::graph;
  for (int i = 0; i < s.size(); ++i)
    for (int j2 = 0; j2 < s.size(); ++j2) {
      if (i == j2) continue;
      if (upper_only && j2 < i) continue;
      if (s.rel(i, j2)) pairs.push_back({i, j2});
    }
  j["relations"] = nlohmann::json::object();
  j["relations"][relation_key(s.structure_class())] = pairs;
  return j.dump(2) + "\n";
}

Structure parse_structure_shorthand(StructureClass cls, const std::string& text) {
  // "chainN" round-trips the default linear-order names.
  if (text.rfind("chain", 0) == 0) {
    const std::string rest = text.substr(5);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && !rest.empty() && n >= 1) {
      if (cls != StructureClass::linord)
        throw ValidationError("'" + text + "' names a linear order, not a " +
                              std::string(structure_class_name(cls)));
      return Structure::chain(n);
    }
  }
  std::vector<std::pair<int, int>> pairs;
  int max_vertex = -1;
  std::stringstream ss(text);
  std::string token;
  auto parse_vertex = [&](const std::string& t) {
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad structure shorthand token '" + t + "'");
    }
    if (used != t.size() || v < 0)
      throw ValidationError("bad structure shorthand token '" + t + "'");
    max_vertex = std::max(max_vertex, v);
    return v;
  };
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
    if (token.empty())
      throw ValidationError("empty entry in structure shorthand '" + text + "'");
    const auto dash = token.find('-');
    if (dash == std::string::npos) {
      parse_vertex(token);
    } else {
      const int i = parse_vertex(token.substr(0, dash));
      const int j = parse_vertex(token.substr(dash + 1));
      pairs.push_back({i, j});
    }
  }
  if (max_vertex < 0)
    throw ValidationError("structure shorthand '" + text + "' mentions no vertices");
  return Structure::from_pairs(cls, max_vertex + 1, pairs);
}

std::vector<Structure> labeled_graphs(int n_max) {
  if (n_max < 1 || n_max > 4)
    throw ValidationError("labeled graph listing supports sizes 1..4");
  std::vector<Structure> out;
  for (int n = 1; n <= n_max; ++n) {
    const int slots = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << slots); ++mask) {
      std::vector<std::pair<int, int>> pairs;
      int slot = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++slot)
          if ((mask >> slot) & 1) pairs.push_back({i, j});
      out.push_back(Structure::from_pairs(StructureClass::graph, n, pairs));
    }
  }
  return out;
}

OrderedGraphCategory ordered_graph_category(int n_max) {
  if (n_max < 1 || n_max > 3)
    throw ValidationError("ordered graph category supports sizes 1..3");
  std::vector<Structure> structs;
  std::vector<std::vector<int>> orders;
  std::vector<std::vector<int>> mor_maps;
  CategoryData data;
  data.name = "ordered-graphs-max" + std::to_string(n_max);

  for (int n = 1; n <= n_max; ++n) {
    const int slots = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << slots); ++mask) {
      std::vector<std::pair<int, int>> pairs;
      int slot = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++slot)
          if ((mask >> slot) & 1) pairs.push_back({i, j});
      const Structure graph = Structure::from_pairs(StructureClass::graph, n, pairs);
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      do {
        structs.push_back(graph);
        orders.push_back(order);
        std::string digits;
        for (int v : order) digits += std::to_string(v);
        data.objects.push_back("OG" + std::to_string(n) + ":" + std::to_string(mask) +
                               ":" + digits);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }

  struct Key {
    int dom, cod;
    std::vector<int> map;
    bool operator<(const Key& o) const {
      return std::tie(dom, cod, map) < std::tie(o.dom, o.cod, o.map);
    }
  };
  std::map<Key, std::string> mor_of;
  auto mor_name = [&](int a, int b, const std::vector<int>& map) {
    std::string s = data.objects[static_cast<std::size_t>(a)] + ">" +
                    data.objects[static_cast<std::size_t>(b)] + "@[";
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(map[i]);
    }
    return s + "]";
  };

  const int nobj = static_cast<int>(data.objects.size());
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(nobj));
  for (int b = 0; b < nobj; ++b) {
    const auto& ord = orders[static_cast<std::size_t>(b)];
    pos[static_cast<std::size_t>(b)].resize(ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i)
      pos[static_cast<std::size_t>(b)][static_cast<std::size_t>(ord[i])] =
          static_cast<int>(i);
  }
  auto order_increasing = [&](int a, int b, const std::vector<int>& map) {
    const auto& ord = orders[static_cast<std::size_t>(a)];
    const auto& pb = pos[static_cast<std::size_t>(b)];
    for (std::size_t k = 1; k < ord.size(); ++k)
      if (pb[static_cast<std::size_t>(map[static_cast<std::size_t>(ord[k - 1])])] >=
          pb[static_cast<std::size_t>(map[static_cast<std::size_t>(ord[k])])])
        return false;
    return true;
  };
  std::vector<std::vector<std::vector<std::vector<int>>>> maps(
      static_cast<std::size_t>(nobj),
      std::vector<std::vector<std::vector<int>>>(static_cast<std::size_t>(nobj)));
  for (int a = 0; a < nobj; ++a)
    for (int b = 0; b < nobj; ++b) {
      for (const auto& map : embeddings(structs[static_cast<std::size_t>(a)],
                                        structs[static_cast<std::size_t>(b)])) {
        if (!order_increasing(a, b, map)) continue;
        maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].push_back(map);
        const std::string id = mor_name(a, b, map);
        data.morphisms.push_back(
            {id, data.objects[static_cast<std::size_t>(a)], data.objects[static_cast<std::size_t>(b)]});
        mor_maps.push_back(map);
        mor_of[{a, b, map}] = id;
      }
    }

  for (int a = 0; a < nobj; ++a) {
    std::vector<int> id(
        static_cast<std::size_t>(structs[static_cast<std::size_t>(a)].size()));
    std::iota(id.begin(), id.end(), 0);
    data.identities[data.objects[static_cast<std::size_t>(a)]] = mor_of.at({a, a, id});
  }

  for (int a = 0; a < nobj; ++a)
    for (int b = 0; b < nobj; ++b)
      for (const auto& f : maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        for (int c = 0; c < nobj; ++c)
          for (const auto& g : maps[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]) {
            std::vector<int> comp(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
              comp[i] = g[static_cast<std::size_t>(f[i])];
            data.compose.push_back({mor_of.at({b, c, g}), mor_of.at({a, b, f}),
                                    mor_of.at({a, c, comp})});
          }

  return OrderedGraphCategory{FinCategory::validate(data), std::move(structs),
                              std::move(orders), std::move(mor_maps)};
}

}  // namespace ramseylab
