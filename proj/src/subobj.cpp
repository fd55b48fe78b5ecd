#include "ramseylab/subobj.hpp"

#include <algorithm>
#include <random>

namespace ramseylab {

SubobjectSet::SubobjectSet(const Category& cat, int A, int B)
    : cat_(&cat), a_(A), b_(B) {
  if (!cat.mono_certified()) {
    const auto mono = check_all_mono(cat);
    if (!mono.holds)
      throw ValidationError("subobject sets need an all-mono category: " +
                            mono.witness);
  }
  const auto auts = aut(cat, A);
  for (MorId f : cat.hom(A, B)) {
    if (index_.count(f)) continue;
    std::vector<MorId> orbit;
    for (MorId alpha : auts) orbit.push_back(cat.compose(f, alpha));
    std::sort(orbit.begin(), orbit.end(), [&](MorId x, MorId y) {
      return cat.hom_position(x) < cat.hom_position(y);
    });
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (orbit.size() != auts.size())
      throw Error("internal: automorphism action on hom(" + cat.object_name(A) +
                  ", " + cat.object_name(B) + ") is not free");
    const int idx = static_cast<int>(classes_.size());
    for (MorId m : orbit) index_.emplace(m, idx);
    classes_.push_back(std::move(orbit));
  }
}

int SubobjectSet::index_of(MorId f) const {
  auto it = index_.find(f);
  if (it == index_.end())
    throw ValidationError("morphism " + cat_->morphism_name(f) +
                          " is not in hom(" + cat_->object_name(a_) + ", " +
                          cat_->object_name(b_) + ")");
  return it->second;
}

std::vector<int> subobject_class_map(const SubobjectSet& source,
                                     const SubobjectSet& target, MorId w) {
  const Category& cat = source.category();
  if (&cat != &target.category())
    throw ValidationError("subobject sets belong to different categories");
  if (source.pattern_object() != target.pattern_object())
    throw ValidationError("subobject sets have different pattern objects");
  if (cat.mor_dom(w) != source.ambient_object() ||
      cat.mor_cod(w) != target.ambient_object())
    throw ValidationError("arrow " + cat.morphism_name(w) +
                          " does not run between the ambient objects");
  std::vector<int> out(static_cast<std::size_t>(source.class_count()));
  for (int i = 0; i < source.class_count(); ++i) {
    int image = -1;
    for (MorId f : source.class_members(i)) {
      const int j = target.index_of(cat.compose(w, f));
      if (image < 0)
        image = j;
      else if (image != j)
        throw Error("internal: class " + std::to_string(i) +
                    " is split by postcomposition with " + cat.morphism_name(w));
    }
    out[static_cast<std::size_t>(i)] = image;
  }
  return out;
}

Partition pullback_by_map(const std::vector<int>& class_map, const Partition& pi) {
  std::vector<int> labels(class_map.size());
  for (std::size_t i = 0; i < class_map.size(); ++i) {
    const int target = class_map[i];
    if (target < 0 || target >= pi.ground_size())
      throw ValidationError("class map image " + std::to_string(target) +
                            " outside the partition ground set");
    labels[i] = pi.block_of(target);
  }
  // from_labels canonicalizes and re-validates, which is the runtime guard
  // that a pullback is itself a partition.
  return Partition::from_labels(labels);
}

PulledPartition pullback(const SubobjectSet& source, const SubobjectSet& target,
                         MorId w, const Partition& pi) {
  if (pi.ground_size() != target.class_count())
    throw ValidationError("partition ground size " +
                          std::to_string(pi.ground_size()) +
                          " does not match the " +
                          std::to_string(target.class_count()) +
                          " target subobject classes");
  auto map = subobject_class_map(source, target, w);
  return {pullback_by_map(map, pi), std::move(map)};
}

PulledPartition pullback(const Category& cat, int pattern, MorId w,
                         const Partition& pi) {
  SubobjectSet source(cat, pattern, cat.mor_dom(w));
  SubobjectSet target(cat, pattern, cat.mor_cod(w));
  return pullback(source, target, w, pi);
}

BasicPropsReport check_basic_props(const Category& cat, int A, int B, int C,
                                   MorId w) {
  if (cat.mor_dom(w) != B || cat.mor_cod(w) != C)
    throw ValidationError("arrow " + cat.morphism_name(w) +
                          " does not run from the middle to the outer object");
  BasicPropsReport report;
  SubobjectSet sb(cat, A, B);
  SubobjectSet sc(cat, A, C);
  const int nb = sb.class_count();
  const int nc = sc.class_count();
  if (nb == 0) return report;  // nothing maps; all four parts are vacuous

  const auto lm = subobject_class_map(sb, sc, w);

  // (a) + (b): preimages of single classes are single classes, i.e. the
  // class map is injective.
  for (int x = 0; x < nb; ++x)
    for (int y = x + 1; y < nb; ++y) {
      ++report.class_pairs_checked;
      if (lm[static_cast<std::size_t>(x)] == lm[static_cast<std::size_t>(y)]) {
        report.passed = false;
        report.violations.push_back(
            "classes " + std::to_string(x) + " and " + std::to_string(y) +
            " of (" + cat.object_name(B) + " choose " + cat.object_name(A) +
            ") collide under postcomposition with " + cat.morphism_name(w));
      }
    }

  constexpr std::uint64_t kExhaustiveCap = 10000;
  report.sampled = count_partitions_capped(nc, 0, kExhaustiveCap + 1) > kExhaustiveCap ||
                   count_partitions_capped(nb, 0, kExhaustiveCap + 1) > kExhaustiveCap;
  std::mt19937_64 rng(0x5eedULL * 1000003ULL + static_cast<std::uint64_t>(w));

  // (c) every pullback is a valid partition (the Partition constructor
  // inside pullback_by_map re-validates canonical form).
  auto check_partition = [&](const Partition& pi) {
    ++report.partitions_checked;
    try {
      (void)pullback_by_map(lm, pi);
    } catch (const Error& e) {
      report.passed = false;
      report.violations.push_back("pullback of " + pi.rgs_string() +
                                  " is not a partition: " + e.what());
    }
  };
  if (!report.sampled) {
    PartitionStream stream(nc, 0);
    while (stream.advance()) check_partition(stream.current_partition());
  } else {
    check_partition(Partition::discrete(nc));
    check_partition(Partition::trivial(nc));
    for (int i = 0; i < 200; ++i) check_partition(random_partition(nc, 0, rng));
  }

  // (d) refining the pullback of a coloring <=> equivalent classes get equal
  // colors. Colorings are represented by the partitions they induce.
  std::vector<Partition> chis;
  if (!report.sampled) {
    PartitionStream stream(nc, 0);
    while (stream.advance()) chis.push_back(stream.current_partition());
  } else {
    chis.push_back(Partition::discrete(nc));
    chis.push_back(Partition::trivial(nc));
    for (int i = 0; i < 32; ++i) chis.push_back(random_partition(nc, 0, rng));
  }
  std::vector<Partition> lambdas;
  if (!report.sampled) {
    PartitionStream stream(nb, 0);
    while (stream.advance()) lambdas.push_back(stream.current_partition());
  } else {
    lambdas.push_back(Partition::discrete(nb));
    lambdas.push_back(Partition::trivial(nb));
    for (int i = 0; i < 32; ++i) lambdas.push_back(random_partition(nb, 0, rng));
  }
  for (const Partition& chi : chis) {
    const Partition pulled = pullback_by_map(lm, chi);
    for (const Partition& lambda : lambdas) {
      ++report.refinement_pairs_checked;
      const bool refines = finer_or_equal(lambda, pulled);
      bool constant_colors = true;
      for (int x = 0; x < nb && constant_colors; ++x)
        for (int y = x + 1; y < nb && constant_colors; ++y)
          if (lambda.same_block(x, y) &&
              chi.block_of(lm[static_cast<std::size_t>(x)]) !=
                  chi.block_of(lm[static_cast<std::size_t>(y)]))
            constant_colors = false;
      if (refines != constant_colors) {
        report.passed = false;
        report.violations.push_back(
            "partition " + lambda.rgs_string() + " vs coloring " + chi.rgs_string() +
            ": refinement says " + (refines ? "yes" : "no") +
            " but color constancy says " + (constant_colors ? "yes" : "no"));
      }
    }
  }
  return report;
}

}  // namespace ramseylab
