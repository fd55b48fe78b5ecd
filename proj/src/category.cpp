#include "ramseylab/category.hpp"

#include <algorithm>

namespace ramseylab {

int Category::hom_position(MorId m) const {
  const auto& hs = hom(mor_dom(m), mor_cod(m));
  auto it = std::find(hs.begin(), hs.end(), m);
  if (it == hs.end()) throw Error("hom_position: morphism not in its hom-set");
  return static_cast<int>(it - hs.begin());
}

int Category::object_index(const std::string& name) const {
  auto idx = find_object(name);
  if (!idx) throw ValidationError("category '" + this->name() + "': no object named '" + name + "'");
  return *idx;
}

std::optional<int> Category::find_object(const std::string& name) const {
  for (int i = 0; i < object_count(); ++i)
    if (object_name(i) == name) return i;
  return std::nullopt;
}

std::vector<MorId> aut(const Category& cat, int obj) {
  const auto& endos = cat.hom(obj, obj);
  const MorId id = cat.identity(obj);
  std::vector<MorId> out;
  for (MorId f : endos) {
    bool invertible = false;
    for (MorId g : endos) {
      if (cat.compose(g, f) == id && cat.compose(f, g) == id) {
        invertible = true;
        break;
      }
    }
    if (invertible) out.push_back(f);
  }
  return out;
}

bool reaches(const Category& cat, int from, int to) {
  return !cat.hom(from, to).empty();
}

std::vector<int> upset(const Category& cat, int obj) {
  std::vector<int> out;
  for (int b = 0; b < cat.object_count(); ++b)
    if (!cat.hom(obj, b).empty()) out.push_back(b);
  return out;
}

bool objects_isomorphic(const Category& cat, int x, int y) {
  if (x == y) return true;
  const MorId idx = cat.identity(x), idy = cat.identity(y);
  for (MorId f : cat.hom(x, y))
    for (MorId g : cat.hom(y, x))
      if (cat.compose(g, f) == idx && cat.compose(f, g) == idy) return true;
  return false;
}

PredicateResult check_all_mono(const Category& cat) {
  const int n = cat.object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (MorId f : cat.hom(a, b))
        for (int x = 0; x < n; ++x) {
          const auto& par = cat.hom(x, a);
          for (std::size_t i = 0; i < par.size(); ++i)
            for (std::size_t j = i + 1; j < par.size(); ++j)
              if (cat.compose(f, par[i]) == cat.compose(f, par[j]))
                return {false, "morphism " + cat.morphism_name(f) +
                                   " not mono: merges " + cat.morphism_name(par[i]) +
                                   " and " + cat.morphism_name(par[j])};
        }
  return {true, ""};
}

PredicateResult check_directed(const Category& cat) {
  const int n = cat.object_count();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      bool found = false;
      for (int c = 0; c < n && !found; ++c)
        found = !cat.hom(a, c).empty() && !cat.hom(b, c).empty();
      if (!found)
        return {false, "objects " + cat.object_name(a) + " and " +
                           cat.object_name(b) + " have no common target"};
    }
  return {true, ""};
}

PredicateResult check_amalgamation(const Category& cat) {
  const int n = cat.object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (MorId f : cat.hom(a, b))
          for (MorId g : cat.hom(a, c)) {
            bool found = false;
            for (int d = 0; d < n && !found; ++d)
              for (MorId h : cat.hom(b, d)) {
                for (MorId k : cat.hom(c, d))
                  if (cat.compose(h, f) == cat.compose(k, g)) {
                    found = true;
                    break;
                  }
                if (found) break;
              }
            if (!found)
              return {false, "span " + cat.morphism_name(f) + " / " +
                                 cat.morphism_name(g) + " from " +
                                 cat.object_name(a) + " has no amalgam"};
          }
  return {true, ""};
}

PredicateResult check_cofinal(const Category& cat, const std::vector<int>& subset) {
  for (int c = 0; c < cat.object_count(); ++c) {
    bool found = false;
    for (int d : subset)
      if (!cat.hom(c, d).empty()) {
        found = true;
        break;
      }
    if (!found)
      return {false, "object " + cat.object_name(c) + " reaches no member of the subset"};
  }
  return {true, ""};
}

PredicateResult check_category_laws(const Category& cat) {
  const int n = cat.object_count();
  for (int a = 0; a < n; ++a) {
    const MorId ida = cat.identity(a);
    if (cat.mor_dom(ida) != a || cat.mor_cod(ida) != a)
      return {false, "identity of " + cat.object_name(a) + " has wrong endpoints"};
    for (int b = 0; b < n; ++b)
      for (MorId f : cat.hom(a, b)) {
        if (cat.mor_dom(f) != a || cat.mor_cod(f) != b)
          return {false, "morphism " + cat.morphism_name(f) + " misfiled in hom"};
        if (cat.compose(f, ida) != f)
          return {false, "right identity fails for " + cat.morphism_name(f)};
        if (cat.compose(cat.identity(b), f) != f)
          return {false, "left identity fails for " + cat.morphism_name(f)};
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (MorId f : cat.hom(a, b))
        for (int c = 0; c < n; ++c)
          for (MorId g : cat.hom(b, c)) {
            const MorId gf = cat.compose(g, f);
            if (cat.mor_dom(gf) != a || cat.mor_cod(gf) != c)
              return {false, "composite " + cat.morphism_name(gf) + " has wrong endpoints"};
            for (int d = 0; d < n; ++d)
              for (MorId h : cat.hom(c, d))
                if (cat.compose(cat.compose(h, g), f) != cat.compose(h, gf))
                  return {false, "associativity fails on " + cat.morphism_name(h) +
                                     " . " + cat.morphism_name(g) + " . " +
                                     cat.morphism_name(f)};
          }
  return {true, ""};
}

}  // namespace ramseylab
