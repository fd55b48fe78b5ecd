#include "ramseylab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ramseylab {

namespace {

constexpr const char* kAxiomLogBound = "H <= log2 |P|";
constexpr const char* kAxiomVanishing = "H = 0 iff trivial";
constexpr const char* kAxiomMonotone = "coarser implies H no larger";
constexpr const char* kAxiomIso = "isomorphism invariance";
constexpr const char* kAxiomTensor = "additive over tensor";

std::vector<int> canonicalize(const std::vector<int>& labels, int* out_blocks) {
  std::vector<int> result(labels.size());
  std::unordered_map<int, int> seen;
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = seen.emplace(labels[i], next);
    if (inserted) ++next;
    result[i] = it->second;
  }
  if (out_blocks) *out_blocks = next;
  return result;
}

}  // namespace

Partition Partition::discrete(int n) {
  if (n < 0) throw ValidationError("partition: negative ground size");
  Partition p;
  p.labels_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.labels_[static_cast<std::size_t>(i)] = i;
  p.block_count_ = n;
  return p;
}

Partition Partition::trivial(int n) {
  if (n < 0) throw ValidationError("partition: negative ground size");
  Partition p;
  p.labels_.assign(static_cast<std::size_t>(n), 0);
  p.block_count_ = n > 0 ? 1 : 0;
  return p;
}

Partition Partition::from_blocks(const std::vector<std::vector<int>>& blocks,
                                 int ground_size) {
  if (ground_size < 0) throw ValidationError("partition: negative ground size");
  std::vector<int> labels(static_cast<std::size_t>(ground_size), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty())
      throw ValidationError("partition: block " + std::to_string(b) + " is empty");
    for (int x : blocks[b]) {
      if (x < 0 || x >= ground_size)
        throw ValidationError("partition: element " + std::to_string(x) +
                              " outside ground set [0," +
                              std::to_string(ground_size) + ")");
      if (labels[static_cast<std::size_t>(x)] != -1)
        throw ValidationError("partition: element " + std::to_string(x) +
                              " appears in two blocks");
      labels[static_cast<std::size_t>(x)] = static_cast<int>(b);
    }
  }
  for (int x = 0; x < ground_size; ++x)
    if (labels[static_cast<std::size_t>(x)] == -1)
      throw ValidationError("partition: element " + std::to_string(x) +
                            " not covered by any block");
  return from_labels(labels);
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  Partition p;
  p.labels_ = canonicalize(labels, &p.block_count_);
  return p;
}

Partition Partition::from_rgs(std::vector<int> rgs) {
  Partition p;
  int mx = -1;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] < 0 || rgs[i] > mx + 1)
      throw ValidationError("partition: not a restricted-growth string at position " +
                            std::to_string(i));
    mx = std::max(mx, rgs[i]);
  }
  p.labels_ = std::move(rgs);
  p.block_count_ = mx + 1;
  return p;
}

Partition Partition::parse_rgs(const std::string& text) {
  std::vector<int> labels;
  if (text.find('.') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
      if (tok.empty()) throw ValidationError("partition: empty label in '" + text + "'");
      labels.push_back(std::stoi(tok));
    }
  } else {
    for (char c : text) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
      else if (c >= 'A' && c <= 'Z') v = 10 + (c - 'A');
      else throw ValidationError(std::string("partition: bad label character '") + c + "'");
      labels.push_back(v);
    }
  }
  return from_rgs(std::move(labels));
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count_));
  for (int x = 0; x < ground_size(); ++x)
    out[static_cast<std::size_t>(labels_[static_cast<std::size_t>(x)])].push_back(x);
  return out;
}

std::vector<int> Partition::block_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(block_count_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

std::string Partition::rgs_string() const {
  if (block_count_ <= 36) {
    std::string s;
    s.reserve(labels_.size());
    for (int l : labels_) s += (l < 10) ? static_cast<char>('0' + l)
                                        : static_cast<char>('a' + (l - 10));
    return s;
  }
  std::string s;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(labels_[i]);
  }
  return s;
}

bool finer_or_equal(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size())
    throw ValidationError("compare: ground sets differ");
  // p finer than q: p never merges what q separates is wrong way round.
  // Every p-block must land inside one q-block: same p-label implies same q-label.
  const int n = p.ground_size();
  std::vector<int> rep(static_cast<std::size_t>(p.block_count()), -1);
  for (int x = 0; x < n; ++x) {
    int b = p.block_of(x);
    int& r = rep[static_cast<std::size_t>(b)];
    if (r == -1) r = q.block_of(x);
    else if (r != q.block_of(x)) return false;
  }
  return true;
}

bool coarser_or_equal(const Partition& p, const Partition& q) {
  return finer_or_equal(q, p);
}

PartitionRelation compare(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size())
    throw ValidationError("compare: ground sets differ");
  if (p == q) return PartitionRelation::equal;
  const bool pf = finer_or_equal(p, q);
  const bool qf = finer_or_equal(q, p);
  if (pf && qf) return PartitionRelation::equal;  // unreachable on canonical forms
  if (pf) return PartitionRelation::first_finer;
  if (qf) return PartitionRelation::first_coarser;
  return PartitionRelation::incomparable;
}

Partition join(const std::vector<Partition>& parts) {
  if (parts.empty()) throw ValidationError("join: empty family");
  const int n = parts[0].ground_size();
  for (const auto& p : parts)
    if (p.ground_size() != n) throw ValidationError("join: ground sets differ");
  // Same block iff same block in every input: key each element by its
  // label tuple and canonicalize.
  std::map<std::vector<int>, int> key_to_label;
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::vector<int> key(parts.size());
  for (int x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < parts.size(); ++i) key[i] = parts[i].block_of(x);
    auto [it, inserted] =
        key_to_label.emplace(key, static_cast<int>(key_to_label.size()));
    labels[static_cast<std::size_t>(x)] = it->second;
  }
  return Partition::from_labels(labels);
}

Partition tensor(const Partition& p, const Partition& q) {
  const int np = p.ground_size(), nq = q.ground_size();
  std::vector<int> labels(static_cast<std::size_t>(np) * static_cast<std::size_t>(nq));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j)
      labels[static_cast<std::size_t>(i) * static_cast<std::size_t>(nq) +
             static_cast<std::size_t>(j)] = p.block_of(i) * q.block_count() + q.block_of(j);
  return Partition::from_labels(labels);
}

bool are_isomorphic(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size()) return false;
  auto a = p.block_sizes(), b = q.block_sizes();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Partition partition_of_coloring(const Coloring& c) {
  if (static_cast<int>(c.color_of.size()) != c.ground_size)
    throw ValidationError("coloring: size mismatch");
  for (int v : c.color_of)
    if (v < 0 || v >= c.palette)
      throw ValidationError("coloring: color " + std::to_string(v) +
                            " outside palette [0," + std::to_string(c.palette) + ")");
  return Partition::from_labels(c.color_of);
}

Coloring coloring_of_partition(const Partition& p) {
  return Coloring{p.ground_size(), p.block_count(), p.labels()};
}

std::uint64_t count_partitions_capped(int n, int max_blocks, std::uint64_t cap) {
  if (n < 0) throw ValidationError("count: negative ground size");
  if (n == 0) return 1;
  const int kmax = (max_blocks <= 0 || max_blocks > n) ? n : max_blocks;
  // ways[m] = completions given m blocks already used, rolled backwards from
  // the last position; saturating adds keep everything inside u64.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(kmax) + 2, 0);
  auto sat_add = [cap](std::uint64_t a, std::uint64_t b) {
    return (a > cap || b > cap || a + b > cap) ? cap + 1 : a + b;
  };
  auto sat_mul = [cap](std::uint64_t a, std::uint64_t m) {
    if (a == 0 || m == 0) return std::uint64_t{0};
    return (a > cap / m) ? cap + 1 : a * m;
  };
  for (int m = 1; m <= kmax; ++m) ways[static_cast<std::size_t>(m)] = 1;
  for (int pos = n - 1; pos >= 1; --pos) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (int m = 1; m <= kmax; ++m) {
      std::uint64_t v = sat_mul(ways[static_cast<std::size_t>(m)],
                                static_cast<std::uint64_t>(m));
      if (m < kmax)
        v = sat_add(v, ways[static_cast<std::size_t>(m) + 1]);
      next[static_cast<std::size_t>(m)] = v;
    }
    ways = std::move(next);
  }
  return std::min(ways[1], cap + 1);
}

PartitionStream::PartitionStream(int n, int max_blocks)
    : PartitionStream(n, max_blocks, {}) {}

PartitionStream::PartitionStream(int n, int max_blocks, std::vector<int> prefix)
    : n_(n),
      max_blocks_((max_blocks <= 0 || max_blocks > n) ? n : max_blocks),
      frozen_(static_cast<int>(prefix.size())) {
  if (n < 0) throw ValidationError("partition stream: negative ground size");
  if (frozen_ > n) throw ValidationError("partition stream: prefix longer than ground");
  rgs_ = std::move(prefix);
  int mx = -1;
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    if (rgs_[i] < 0 || rgs_[i] > mx + 1 || rgs_[i] >= max_blocks_)
      throw ValidationError("partition stream: invalid prefix");
    mx = std::max(mx, rgs_[i]);
    max_so_far_.push_back(mx);
  }
  rgs_.resize(static_cast<std::size_t>(n), 0);
  max_so_far_.resize(static_cast<std::size_t>(n));
  for (int i = frozen_; i < n; ++i)
    max_so_far_[static_cast<std::size_t>(i)] = (i == 0) ? 0 : max_so_far_[static_cast<std::size_t>(i) - 1];
  if (n_ > 0 && frozen_ == 0) {
    rgs_[0] = 0;
    max_so_far_[0] = 0;
  }
}

bool PartitionStream::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (n_ == 0) { done_ = true; return true; }  // single empty partition
    return true;
  }
  for (int i = n_ - 1; i >= std::max(frozen_, 1); --i) {
    const int prev_max = max_so_far_[static_cast<std::size_t>(i) - 1];
    const int limit = std::min(prev_max + 1, max_blocks_ - 1);
    if (rgs_[static_cast<std::size_t>(i)] < limit) {
      ++rgs_[static_cast<std::size_t>(i)];
      max_so_far_[static_cast<std::size_t>(i)] =
          std::max(prev_max, rgs_[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n_; ++j) {
        rgs_[static_cast<std::size_t>(j)] = 0;
        max_so_far_[static_cast<std::size_t>(j)] = max_so_far_[static_cast<std::size_t>(j) - 1];
      }
      return true;
    }
  }
  done_ = true;
  return false;
}

std::vector<std::vector<int>> rgs_prefixes(int n, int max_blocks, int depth) {
  if (depth < 0 || depth > n) throw ValidationError("prefixes: bad depth");
  const int kmax = (max_blocks <= 0 || max_blocks > n) ? n : max_blocks;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int mx) -> void {
    if (static_cast<int>(cur.size()) == depth) {
      out.push_back(cur);
      return;
    }
    const int limit = std::min(mx + 1, kmax - 1);
    for (int v = 0; v <= limit; ++v) {
      cur.push_back(v);
      self(self, std::max(mx, v));
      cur.pop_back();
    }
  };
  if (depth == 0) out.push_back({});
  else rec(rec, -1);
  return out;
}

Partition random_partition(int n, int max_blocks, std::mt19937_64& rng) {
  const int kmax = (max_blocks <= 0 || max_blocks > n) ? n : max_blocks;
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> dist(0, kmax - 1);
  for (auto& l : labels) l = dist(rng);
  return Partition::from_labels(labels);
}

double shannon_entropy(const Partition& p) {
  const int n = p.ground_size();
  if (n == 0) throw ValidationError("entropy: empty ground set");
  double h = 0.0;
  for (int s : p.block_sizes()) {
    const double prob = static_cast<double>(s) / static_cast<double>(n);
    if (prob > 0.0) h -= prob * std::log2(prob);
  }
  return h;
}

double boltzmann_entropy(const Partition& p) {
  if (p.ground_size() == 0) throw ValidationError("entropy: empty ground set");
  return std::log2(static_cast<double>(p.block_count()));
}

double entropy_eval(EntropyKind kind, const Partition& p) {
  return kind == EntropyKind::shannon ? shannon_entropy(p) : boltzmann_entropy(p);
}

const char* entropy_kind_name(EntropyKind kind) {
  return kind == EntropyKind::shannon ? "shannon" : "boltzmann";
}

namespace {

std::string describe(const Partition& p) {
  return "rgs " + p.rgs_string() + " (n=" + std::to_string(p.ground_size()) +
         ", blocks=" + std::to_string(p.block_count()) + ")";
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  PartitionStream s(n, 0);
  while (s.advance()) out.push_back(s.current_partition());
  return out;
}

}  // namespace

AxiomReport check_entropy_axioms(const std::function<double(const Partition&)>& H,
                                 int n_max) {
  constexpr double kTol = 1e-9;
  std::vector<std::vector<Partition>> by_n;
  by_n.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) by_n.push_back(all_partitions(n));

  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : by_n[static_cast<std::size_t>(n) - 1]) {
      const double h = H(p);
      if (h > std::log2(static_cast<double>(p.block_count())) + kTol)
        return {false, kAxiomLogBound, describe(p)};
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& p : by_n[static_cast<std::size_t>(n) - 1]) {
      const double h = H(p);
      const bool zero = std::abs(h) <= kTol;
      if (zero != p.is_trivial())
        return {false, kAxiomVanishing, describe(p)};
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    const auto& ps = by_n[static_cast<std::size_t>(n) - 1];
    for (const auto& coarse : ps)
      for (const auto& fine : ps) {
        if (!finer_or_equal(fine, coarse)) continue;
        if (H(coarse) > H(fine) + kTol)
          return {false, kAxiomMonotone,
                  "coarse " + describe(coarse) + " vs fine " + describe(fine)};
      }
  }
  for (int n1 = 1; n1 <= n_max; ++n1)
    for (int n2 = 1; n2 <= n_max; ++n2)
      for (const auto& p : by_n[static_cast<std::size_t>(n1) - 1])
        for (const auto& q : by_n[static_cast<std::size_t>(n2) - 1]) {
          if (!are_isomorphic(p, q)) continue;
          if (std::abs(H(p) - H(q)) > kTol)
            return {false, kAxiomIso, describe(p) + " vs " + describe(q)};
        }
  for (int n1 = 1; n1 <= n_max; ++n1)
    for (int n2 = 1; n2 <= n_max; ++n2) {
      if (n1 * n2 > n_max * n_max) continue;
      for (const auto& p : by_n[static_cast<std::size_t>(n1) - 1])
        for (const auto& q : by_n[static_cast<std::size_t>(n2) - 1]) {
          if (std::abs(H(tensor(p, q)) - (H(p) + H(q))) > kTol)
            return {false, kAxiomTensor, describe(p) + " tensor " + describe(q)};
        }
    }
  return {true, "", ""};
}

AxiomReport check_entropy_axioms(EntropyKind kind, int n_max) {
  return check_entropy_axioms(
      [kind](const Partition& p) { return entropy_eval(kind, p); }, n_max);
}

}  // namespace ramseylab
