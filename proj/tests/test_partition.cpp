#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ramseylab/errors.hpp"
#include "ramseylab/partition.hpp"

using namespace ramseylab;

namespace {

// Oracle: Bell numbers via the Bell triangle recurrence.
std::uint64_t bell_number(int n) {
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = next;
  }
  return row.front();
}

// Oracle: Stirling numbers of the second kind, summed over 1..k blocks.
std::uint64_t partitions_up_to_blocks(int n, int k) {
  std::vector<std::vector<std::uint64_t>> s(
      static_cast<std::size_t>(n + 1),
      std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<std::uint64_t>(j) * s[static_cast<std::size_t>(i - 1)]
                                           [static_cast<std::size_t>(j)] +
          s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  std::uint64_t total = 0;
  for (int j = 1; j <= std::min(n, k); ++j)
    total += s[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
  return total;
}

// Oracle: refinement straight from the definition.
bool finer_oracle(const Partition& p, const Partition& q) {
  REQUIRE(p.ground_size() == q.ground_size());
  for (int a = 0; a < p.ground_size(); ++a)
    for (int b = 0; b < p.ground_size(); ++b)
      if (p.same_block(a, b) && !q.same_block(a, b)) return false;
  return true;
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  PartitionStream stream(n, 0);
  while (stream.advance()) out.push_back(stream.current_partition());
  return out;
}

}  // namespace

TEST_CASE("restricted-growth canonicalization is label-order independent") {
  const Partition p = Partition::from_labels({7, 7, 2, 9, 2});
  CHECK(p.rgs_string() == "00121");
  CHECK(p.block_count() == 3);
  CHECK(p.same_block(0, 1));
  CHECK(p.same_block(2, 4));
  CHECK(!p.same_block(0, 2));

  const Partition q =
      Partition::from_blocks({{0, 1}, {2, 4}, {3}}, 5);
  CHECK(p == q);

  CHECK(Partition::discrete(4).rgs_string() == "0123");
  CHECK(Partition::trivial(4).rgs_string() == "0000");
  CHECK(Partition::discrete(4).is_discrete());
  CHECK(Partition::trivial(4).is_trivial());
}

TEST_CASE("malformed block systems are rejected") {
  CHECK_THROWS_AS(Partition::from_blocks({{0, 1}, {1, 2}}, 3), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks({{0}, {2}}, 3), ValidationError);
  CHECK_THROWS_AS(Partition::parse_rgs("010x"), ValidationError);
  CHECK_THROWS_AS(Partition::parse_rgs("1"), ValidationError);
  CHECK_THROWS_AS(Partition::parse_rgs("021"), ValidationError);
}

TEST_CASE("textual round trip, including the dotted large-palette form") {
  for (const char* text : {"0", "0000", "0123", "00102", "0102342"}) {
    const Partition p = Partition::parse_rgs(text);
    CHECK(p.rgs_string() == text);
    CHECK(Partition::parse_rgs(p.rgs_string()) == p);
  }
  const Partition dotted = Partition::parse_rgs("0.1.0.2");
  CHECK(dotted == Partition::parse_rgs("0102"));

  // 40 singleton blocks force the dot-separated spelling.
  std::vector<int> labels(40);
  for (int i = 0; i < 40; ++i) labels[static_cast<std::size_t>(i)] = i;
  const Partition wide = Partition::from_labels(labels);
  CHECK(wide.rgs_string().find('.') != std::string::npos);
  CHECK(Partition::parse_rgs(wide.rgs_string()) == wide);
}

TEST_CASE("refinement agrees with the elementwise oracle on all pairs") {
  for (int n = 1; n <= 5; ++n) {
    const auto parts = all_partitions(n);
    for (const auto& p : parts)
      for (const auto& q : parts) {
        CHECK(finer_or_equal(p, q) == finer_oracle(p, q));
        CHECK(coarser_or_equal(p, q) == finer_oracle(q, p));
        const PartitionRelation rel = compare(p, q);
        if (p == q) CHECK(rel == PartitionRelation::equal);
        if (rel == PartitionRelation::incomparable) {
          CHECK(!finer_oracle(p, q));
          CHECK(!finer_oracle(q, p));
        }
      }
  }
}

TEST_CASE("join is the least partition refining every input") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Partition p = random_partition(n, 0, rng);
    const Partition q = random_partition(n, 0, rng);
    const Partition j = join({p, q});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK(j.same_block(a, b) ==
              (p.same_block(a, b) && q.same_block(a, b)));
    CHECK(finer_or_equal(j, p));
    CHECK(finer_or_equal(j, q));
  }
  CHECK(join({Partition::trivial(3)}) == Partition::trivial(3));
}

TEST_CASE("tensor blocks are exactly the products of blocks, row-major") {
  const Partition p = Partition::parse_rgs("010");
  const Partition q = Partition::parse_rgs("01");
  const Partition t = tensor(p, q);
  REQUIRE(t.ground_size() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      for (int i2 = 0; i2 < 3; ++i2)
        for (int j2 = 0; j2 < 2; ++j2)
          CHECK(t.same_block(i * 2 + j, i2 * 2 + j2) ==
                (p.same_block(i, i2) && q.same_block(j, j2)));
  CHECK(t.block_count() == p.block_count() * q.block_count());
}

TEST_CASE("partition streams count Bell numbers and bounded variants") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(all_partitions(n).size() == bell_number(n));
    for (int k = 1; k <= 4; ++k) {
      PartitionStream stream(n, k);
      std::size_t count = 0;
      while (stream.advance()) {
        ++count;
        CHECK(stream.current_block_count() <= k);
      }
      CHECK(count == partitions_up_to_blocks(n, k));
      CHECK(count_partitions_capped(n, k, 1u << 30) == count);
    }
    CHECK(count_partitions_capped(n, 0, 1u << 30) == bell_number(n));
  }
  CHECK(count_partitions_capped(12, 0, 1000) == 1001);  // overflow reads cap + 1
}

TEST_CASE("streams are strictly lexicographic and prefix streams tile") {
  const int n = 6;
  std::vector<std::vector<int>> seen;
  PartitionStream stream(n, 0);
  while (stream.advance()) {
    if (!seen.empty()) CHECK(seen.back() < stream.current());
    seen.push_back(stream.current());
  }

  for (int depth = 1; depth <= 3; ++depth) {
    std::vector<std::vector<int>> tiled;
    for (const auto& prefix : rgs_prefixes(n, 0, depth)) {
      PartitionStream ps(n, 0, prefix);
      while (ps.advance()) tiled.push_back(ps.current());
    }
    CHECK(tiled == seen);
  }
}

TEST_CASE("random partitions are valid, bounded, and seed-deterministic") {
  std::mt19937_64 a(42), b(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Partition p = random_partition(7, 3, a);
    const Partition q = random_partition(7, 3, b);
    CHECK(p == q);
    CHECK(p.block_count() <= 3);
    CHECK(Partition::from_labels(p.labels()) == p);
  }
}

TEST_CASE("colorings convert to partitions and back") {
  const Coloring c{4, 3, {2, 0, 2, 1}};
  const Partition p = partition_of_coloring(c);
  CHECK(p.rgs_string() == "0102");
  const Coloring back = coloring_of_partition(p);
  CHECK(back.ground_size == 4);
  CHECK(back.palette == 3);
  CHECK(partition_of_coloring(back) == p);
}

TEST_CASE("entropy hand values") {
  const Partition even = Partition::parse_rgs("0011");
  CHECK(shannon_entropy(even) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(boltzmann_entropy(even) == doctest::Approx(1.0).epsilon(1e-12));

  const Partition skew = Partition::parse_rgs("001");
  const double expected = -((2.0 / 3) * std::log2(2.0 / 3) +
                            (1.0 / 3) * std::log2(1.0 / 3));
  CHECK(shannon_entropy(skew) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(boltzmann_entropy(skew) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(shannon_entropy(Partition::trivial(5)) == doctest::Approx(0.0));
  CHECK(boltzmann_entropy(Partition::trivial(5)) == doctest::Approx(0.0));
  CHECK(shannon_entropy(Partition::discrete(8)) == doctest::Approx(3.0));
  CHECK(boltzmann_entropy(Partition::discrete(8)) == doctest::Approx(3.0));

  // Shannon never exceeds Boltzmann anywhere; both are iso-invariant.
  for (const auto& p : all_partitions(5)) {
    CHECK(shannon_entropy(p) <= boltzmann_entropy(p) + 1e-12);
    CHECK(entropy_eval(EntropyKind::shannon, p) ==
          doctest::Approx(shannon_entropy(p)));
  }
}

TEST_CASE("both entropies satisfy every axiom up to ground size six") {
  const AxiomReport shannon = check_entropy_axioms(EntropyKind::shannon, 6);
  CHECK(shannon.passed);
  CHECK(shannon.failed_axiom.empty());
  const AxiomReport boltzmann = check_entropy_axioms(EntropyKind::boltzmann, 6);
  CHECK(boltzmann.passed);
  CHECK(boltzmann.failed_axiom.empty());
}

TEST_CASE("broken pseudo-entropies fail with a named axiom and witness") {
  // Raw block count: violates the log bound on the discrete partition.
  const AxiomReport blocks = check_entropy_axioms(
      [](const Partition& p) { return static_cast<double>(p.block_count()); },
      5);
  CHECK(!blocks.passed);
  CHECK(blocks.failed_axiom == "H <= log2 |P|");
  CHECK(!blocks.witness.empty());

  // Sign-flipped Shannon: slips past the vanishing law, caught on coarsening.
  const AxiomReport flipped = check_entropy_axioms(
      [](const Partition& p) { return -shannon_entropy(p); }, 5);
  CHECK(!flipped.passed);
  CHECK(!flipped.failed_axiom.empty());
  CHECK(!flipped.witness.empty());
}
