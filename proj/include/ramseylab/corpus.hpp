#pragma once

#include <string>
#include <vector>

#include "ramseylab/fincat.hpp"
#include "ramseylab/functors.hpp"
#include "ramseylab/ramsey.hpp"

namespace ramseylab {

// One small validated category with its recorded predicate flags. The flags
// are what the builders expect; tests re-derive them with the predicate
// checkers, and suites treat them as data, not assumptions.
struct CorpusEntry {
  std::string name;
  FinCategory cat;
  bool amalgamation = false;
  bool directed = false;
};

// The built-in test corpus: small all-mono categories with hom-sets of at
// most four morphisms each. Deterministic order and content.
std::vector<CorpusEntry> build_corpus();

// Non-owning suite views over the built corpus.
std::vector<CorpusCategory> corpus_views(const std::vector<CorpusEntry>& entries);

// Writes one canonical JSON file per entry into dir (created if needed),
// named <entry>.json. Returns the file names in write order.
std::vector<std::string> write_corpus(const std::string& dir);

// The two-to-one functor from the duplicated-object category "Edup" onto
// "E": both isomorphic copies of the larger object collapse onto the single
// one. Requires the two corpus entries by those names; validated on return.
FunctorTable collapse_functor(const FinCategory& edup, const FinCategory& e);

}  // namespace ramseylab
