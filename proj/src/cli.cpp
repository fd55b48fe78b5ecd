#include "ramseylab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramseylab/cache.hpp"
#include "ramseylab/corpus.hpp"
#include "ramseylab/entropy.hpp"
#include "ramseylab/functors.hpp"
#include "ramseylab/ramsey.hpp"
#include "ramseylab/report.hpp"
#include "ramseylab/structures.hpp"
#include "ramseylab/subobj.hpp"

namespace ramseylab {

namespace {

using nlohmann::json;

// Result provenance: computed from first principles inside the given finite
// scope, or imported from a known closed form and cross-checked.
constexpr const char* kProvenanceInternal = "first-principles";
constexpr const char* kProvenanceOracle = "literature-oracle";

json ext_json(const ExtReal& v) {
  if (!v.is_finite()) return json("inf");
  return json(v.v);
}

json ext_json(const ExtNat& v) {
  if (!v.is_finite()) return json("inf");
  return json(v.value());
}

std::string ext_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  return std::to_string(value.get<std::uint64_t>());
}

EntropyKind entropy_kind_from_name(const std::string& name) {
  if (name == "shannon") return EntropyKind::shannon;
  if (name == "boltzmann") return EntropyKind::boltzmann;
  throw ValidationError("unknown entropy kind '" + name +
                        "' (expected shannon or boltzmann)");
}

EssentialMode essential_mode_from_name(const std::string& text) {
  if (text == "literal") return EssentialMode{true, 0};
  if (text == "graded") return EssentialMode{false, 0};
  if (text.rfind("graded:", 0) == 0) {
    const std::string num = text.substr(7);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw ValidationError("bad palette in mode '" + text + "'");
    const int k = std::stoi(num);
    if (k < 1) throw ValidationError("graded mode needs a palette of at least 1");
    return EssentialMode{false, k};
  }
  throw ValidationError("unknown mode '" + text +
                        "' (expected literal, graded, or graded:K)");
}

std::string essential_mode_name(const EssentialMode& mode) {
  if (mode.literal) return "literal";
  if (mode.colors == 0) return "graded";
  return "graded:" + std::to_string(mode.colors);
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FinCategory load_category(const std::string& path) {
  return FinCategory::validate(category_from_json_file(path));
}

// Bare integers are chain lengths for total orders; everything else goes
// through the pair shorthand.
Structure parse_structure_arg(StructureClass cls, const std::string& text) {
  if (cls == StructureClass::linord && !text.empty() &&
      std::all_of(text.begin(), text.end(),
                  [](unsigned char c) { return std::isdigit(c); }))
    return Structure::chain(std::stoi(text));
  return parse_structure_shorthand(cls, text);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

json suite_json(const SuiteReport& r) {
  json j;
  j["passed"] = r.passed;
  j["lines"] = r.lines;
  j["violations"] = r.violations;
  j["expected_exhibits"] = r.expected_exhibits;
  return j;
}

struct Outcome {
  std::string body;
  std::vector<std::string> canon;  // canonical re-runnable argv
  std::vector<std::string> files;  // input files folded into the cache key
  std::string signature;           // filled by a cache probe
  bool cacheable = false;
  bool from_cache = false;
};

struct CommonOpts {
  int threads = 1;
  std::uint64_t bell = kDefaultBellBudget;
  bool tsv = false;
  std::string cache_dir;
};

void add_common(CLI::App* sub, CommonOpts& c, bool with_threads = true) {
  sub->add_flag("--tsv", c.tsv, "Tab-separated output instead of JSON");
  sub->add_option("--budget-bell", c.bell, "Partition enumeration budget");
  if (with_threads)
    sub->add_option("--threads", c.threads, "Worker threads for sweeps");
  sub->add_option("--cache-dir", c.cache_dir,
                  "Cache directory (or env RAMSEYLAB_CACHE)");
}

void push_common(std::vector<std::string>& canon, const CommonOpts& c) {
  canon.push_back("--budget-bell");
  canon.push_back(std::to_string(c.bell));
  if (c.tsv) canon.push_back("--tsv");
}

std::string render(const json& body, const CommonOpts& c) {
  return c.tsv ? flat_tsv(body) : canonical_json(body);
}

std::string signature_of(const Outcome& o) {
  json sig;
  sig["argv"] = o.canon;
  json files = json::object();
  for (const auto& f : o.files) files[f] = fnv1a_hex(slurp_file(f));
  sig["files"] = files;
  return canonical_json(sig);
}

// Cache gate for one invocation: disabled (null cache) unless a directory
// was resolved and caching is allowed in this dispatch.
struct CacheGate {
  std::unique_ptr<ReportCache> cache;
  std::ostream* err = nullptr;

  bool probe(Outcome& o) const {
    if (!cache || !o.cacheable) return false;
    o.signature = signature_of(o);
    const std::string key = ReportCache::key_of(o.signature);
    if (auto hit = cache->lookup(o.signature)) {
      o.body = *hit;
      o.from_cache = true;
      (*err) << "cache: hit " << key << "\n";
      return true;
    }
    return false;
  }

  void store(const Outcome& o) const {
    if (!cache || !o.cacheable || o.from_cache) return;
    const std::string sig = o.signature.empty() ? signature_of(o) : o.signature;
    cache->store(sig, o.canon, o.body);
    (*err) << "cache: store " << ReportCache::key_of(sig) << "\n";
  }
};

int run_cli_impl(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err, bool allow_cache);

// ---------------------------------------------------------------- validate
struct ValidateCmd {
  CLI::App* sub = nullptr;
  std::string file;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("validate-cat",
                             "Check a category file against the laws");
    sub->add_option("file", file, "Category JSON file")->required();
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate&) const {
    const FinCategory cat = load_category(file);
    const auto mono = check_all_mono(cat);
    const auto dir = check_directed(cat);
    const auto amal = check_amalgamation(cat);
    json body;
    body["command"] = "validate-cat";
    body["name"] = cat.name();
    body["object_count"] = cat.object_count();
    json objs = json::array();
    for (int i = 0; i < cat.object_count(); ++i) objs.push_back(cat.object_name(i));
    body["objects"] = objs;
    body["morphism_count"] = cat.morphism_count();
    body["all_mono"] = mono.holds;
    body["directed"] = dir.holds;
    body["amalgamation"] = amal.holds;
    json wit;
    wit["all_mono"] = mono.witness;
    wit["directed"] = dir.witness;
    wit["amalgamation"] = amal.witness;
    body["witnesses"] = wit;
    body["provenance"] = kProvenanceInternal;
    Outcome o;
    o.body = render(body, common);
    return o;
  }
};

// -------------------------------------------------------------- structures
struct StructuresCmd {
  CLI::App* sub = nullptr;
  std::string cls_name;
  int max_n = 0;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("structures",
                             "List the structure universe of a class");
    sub->add_option("--class", cls_name, "graph|poset|linord|digraph")
        ->required();
    sub->add_option("--max-n", max_n, "Size ceiling (0 = class default)");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate&) const {
    const StructureClass cls = structure_class_from_name(cls_name);
    const int n = max_n > 0 ? max_n : universe_default_max(cls);
    const auto universe = structure_universe(cls, n);
    json body;
    body["command"] = "structures";
    body["class"] = structure_class_name(cls);
    body["max_n"] = n;
    body["count"] = universe.size();
    json objs = json::array();
    for (const auto& s : universe) {
      json o;
      o["name"] = structure_default_name(s);
      o["size"] = s.size();
      o["automorphisms"] = automorphism_count(s);
      objs.push_back(o);
    }
    body["objects"] = objs;
    body["scope"] = "one representative per isomorphism class, sizes 1.." +
                    std::to_string(n);
    body["provenance"] = kProvenanceInternal;
    Outcome o;
    o.body = render(body, common);
    return o;
  }
};

// --------------------------------------------------------------------- hom
struct HomCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, query = "hom", a, b;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("hom", "Hom-sets, automorphisms, reachability");
    sub->add_option("--cat", cat_file, "Category JSON file")->required();
    sub->add_option("--query", query, "hom|aut|reaches|upset");
    sub->add_option("--a", a, "First object")->required();
    sub->add_option("--b", b, "Second object (hom, reaches)");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate& gate) const {
    Outcome o;
    o.canon = {"hom", "--cat", cat_file, "--query", query, "--a", a};
    if (!b.empty()) {
      o.canon.push_back("--b");
      o.canon.push_back(b);
    }
    push_common(o.canon, common);
    o.files = {cat_file};
    o.cacheable = true;
    if (gate.probe(o)) return o;

    const FinCategory cat = load_category(cat_file);
    const int oa = cat.object_index(a);
    json body;
    body["command"] = "hom";
    body["query"] = query;
    body["a"] = a;
    if (query == "hom" || query == "reaches") {
      if (b.empty()) throw ValidationError("query '" + query + "' needs --b");
      body["b"] = b;
    }
    if (query == "hom") {
      const int ob = cat.object_index(b);
      json names = json::array();
      for (MorId f : cat.hom(oa, ob)) names.push_back(cat.morphism_name(f));
      body["morphisms"] = names;
      body["count"] = names.size();
    } else if (query == "aut") {
      json names = json::array();
      for (MorId f : aut(cat, oa)) names.push_back(cat.morphism_name(f));
      body["morphisms"] = names;
      body["count"] = names.size();
    } else if (query == "reaches") {
      body["result"] = reaches(cat, oa, cat.object_index(b));
    } else if (query == "upset") {
      json names = json::array();
      for (int obj : upset(cat, oa)) names.push_back(cat.object_name(obj));
      body["objects"] = names;
      body["count"] = names.size();
    } else {
      throw ValidationError("unknown query '" + query +
                            "' (expected hom, aut, reaches, or upset)");
    }
    body["provenance"] = kProvenanceInternal;
    o.body = render(body, common);
    return o;
  }
};

// ------------------------------------------------------------------ subobj
struct SubobjCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, a, b, w, pi;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("subobj",
                             "Subobject classes of (b choose a), pullbacks");
    sub->add_option("--cat", cat_file, "Category JSON file")->required();
    sub->add_option("--a", a, "Pattern object")->required();
    sub->add_option("--b", b, "Ambient object")->required();
    sub->add_option("--w", w, "Arrow out of b for a pullback");
    sub->add_option("--pi", pi,
                    "Partition (restricted-growth string) to pull back");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate& gate) const {
    if (w.empty() != pi.empty())
      throw ValidationError("a pullback needs both --w and --pi");
    Outcome o;
    o.canon = {"subobj", "--cat", cat_file, "--a", a, "--b", b};
    if (!w.empty()) {
      o.canon.push_back("--w");
      o.canon.push_back(w);
      o.canon.push_back("--pi");
      o.canon.push_back(Partition::parse_rgs(pi).rgs_string());
    }
    push_common(o.canon, common);
    o.files = {cat_file};
    o.cacheable = true;
    if (gate.probe(o)) return o;

    const FinCategory cat = load_category(cat_file);
    const int oa = cat.object_index(a);
    const int ob = cat.object_index(b);
    const SubobjectSet sb(cat, oa, ob);
    json body;
    body["command"] = "subobj";
    body["a"] = a;
    body["b"] = b;
    body["count"] = sb.class_count();
    json classes = json::array();
    for (int i = 0; i < sb.class_count(); ++i) {
      json members = json::array();
      for (MorId f : sb.class_members(i)) members.push_back(cat.morphism_name(f));
      classes.push_back(members);
    }
    body["classes"] = classes;
    if (!w.empty()) {
      const MorId wm = cat.morphism_index(w);
      if (cat.mor_dom(wm) != ob)
        throw ValidationError("arrow " + w + " does not start at " + b);
      const Partition p = Partition::parse_rgs(pi);
      const SubobjectSet st(cat, oa, cat.mor_cod(wm));
      if (p.ground_size() != st.class_count())
        throw ValidationError(
            "partition covers " + std::to_string(p.ground_size()) +
            " classes, the target has " + std::to_string(st.class_count()));
      const PulledPartition pulled = pullback(sb, st, wm, p);
      json pj;
      pj["w"] = w;
      pj["pi"] = p.rgs_string();
      pj["partition"] = pulled.partition.rgs_string();
      pj["class_map"] = pulled.class_map;
      body["pullback"] = pj;
    }
    body["provenance"] = kProvenanceInternal;
    o.body = render(body, common);
    return o;
  }
};

// ------------------------------------------------------------------- arrow
struct ArrowCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, cls_name, a, b, c, kind_name = "structural";
  int colors = 0;
  std::uint64_t threshold = 0;
  bool prune = false;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("arrow", "Exhaustive coloring arrow verdict");
    sub->add_option("--cat", cat_file, "Category JSON file");
    sub->add_option("--class", cls_name, "graph|poset|linord|digraph");
    sub->add_option("--A", a, "Pattern object")->required();
    sub->add_option("--B", b, "Middle object")->required();
    sub->add_option("--C", c, "Outer object")->required();
    sub->add_option("-k,--colors", colors, "Palette size")->required();
    sub->add_option("-t,--threshold", threshold, "Color threshold")->required();
    sub->add_option("--kind", kind_name, "structural|embedding");
    sub->add_flag("--prune-aut", prune, "Skip colorings equivalent under Aut(C)");
    add_common(sub, common);
  }

  Outcome run(const CacheGate& gate) const {
    const ArrowKind kind = arrow_kind_from_name(kind_name);
    if (cat_file.empty() == cls_name.empty())
      throw ValidationError("arrow needs exactly one of --cat and --class");
    Outcome o;
    o.canon = {"arrow"};
    if (!cat_file.empty()) {
      o.canon.insert(o.canon.end(), {"--cat", cat_file});
      o.files = {cat_file};
    } else {
      o.canon.insert(o.canon.end(), {"--class", cls_name});
    }
    o.canon.insert(o.canon.end(),
                   {"--A", a, "--B", b, "--C", c, "--colors",
                    std::to_string(colors), "--threshold",
                    std::to_string(threshold), "--kind", arrow_kind_name(kind)});
    if (prune) o.canon.push_back("--prune-aut");
    push_common(o.canon, common);
    o.cacheable = true;
    if (gate.probe(o)) return o;

    std::unique_ptr<Category> owned;
    ArrowQuery q;
    q.colors = colors;
    q.threshold = threshold;
    q.kind = kind;
    if (!cat_file.empty()) {
      auto cat = std::make_unique<FinCategory>(load_category(cat_file));
      q.pattern = cat->object_index(a);
      q.middle = cat->object_index(b);
      q.outer = cat->object_index(c);
      owned = std::move(cat);
    } else {
      const StructureClass cls = structure_class_from_name(cls_name);
      std::vector<Structure> objs{parse_structure_arg(cls, a),
                                  parse_structure_arg(cls, b),
                                  parse_structure_arg(cls, c)};
      owned = std::make_unique<StructureCategory>("arrow-query", std::move(objs));
      q.pattern = 0;
      q.middle = 1;
      q.outer = 2;
    }
    const Category& cat = *owned;
    ArrowOptions opts;
    opts.threads = common.threads;
    opts.bell_budget = common.bell;
    opts.prune_aut = prune;
    const ArrowResult r = arrow_check(cat, q, opts);

    json body;
    body["command"] = "arrow";
    body["kind"] = arrow_kind_name(kind);
    body["colors"] = colors;
    body["threshold"] = threshold;
    json names;
    names["pattern"] = cat.object_name(q.pattern);
    names["middle"] = cat.object_name(q.middle);
    names["outer"] = cat.object_name(q.outer);
    body["objects"] = names;
    body["holds"] = r.holds;
    body["ground_size"] = r.ground_size;
    body["partition_space"] = r.partition_space;
    body["certificate"] = r.certificate.rgs_string();
    body["certificate_colors"] = r.certificate_colors;
    body["witness_arrow"] = r.witness_arrow;
    body["scope"] = "exhaustive over colorings of the ground set into at most " +
                    std::to_string(std::min(colors, r.ground_size)) + " blocks";
    body["provenance"] = kProvenanceInternal;
    o.body = render(body, common);
    return o;
  }
};

// ----------------------------------------------------------------- witness
struct WitnessCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, a, b, kind_name = "structural", candidates;
  int colors = 0;
  std::uint64_t threshold = 0;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("witness",
                             "First object whose arrow to the pair holds");
    sub->add_option("--cat", cat_file, "Category JSON file")->required();
    sub->add_option("--A", a, "Pattern object")->required();
    sub->add_option("--B", b, "Middle object")->required();
    sub->add_option("-k,--colors", colors, "Palette size")->required();
    sub->add_option("-t,--threshold", threshold, "Color threshold")->required();
    sub->add_option("--kind", kind_name, "structural|embedding");
    sub->add_option("--candidates", candidates, "Comma-separated object names");
    add_common(sub, common);
  }

  Outcome run(const CacheGate& gate) const {
    const ArrowKind kind = arrow_kind_from_name(kind_name);
    Outcome o;
    o.canon = {"witness", "--cat",  cat_file,
               "--A",     a,        "--B",
               b,         "--colors", std::to_string(colors),
               "--threshold", std::to_string(threshold), "--kind",
               arrow_kind_name(kind)};
    if (!candidates.empty()) {
      o.canon.push_back("--candidates");
      o.canon.push_back(candidates);
    }
    push_common(o.canon, common);
    o.files = {cat_file};
    o.cacheable = true;
    if (gate.probe(o)) return o;

    const FinCategory cat = load_category(cat_file);
    std::vector<int> cands;
    if (candidates.empty()) {
      for (int i = 0; i < cat.object_count(); ++i) cands.push_back(i);
    } else {
      for (const auto& name : split_csv(candidates))
        cands.push_back(cat.object_index(name));
    }
    ArrowOptions opts;
    opts.threads = common.threads;
    opts.bell_budget = common.bell;
    const WitnessResult r =
        witness_search(cat, cands, cat.object_index(b), cat.object_index(a),
                       colors, threshold, kind, opts);
    json body;
    body["command"] = "witness";
    body["kind"] = arrow_kind_name(kind);
    body["a"] = a;
    body["b"] = b;
    body["colors"] = colors;
    body["threshold"] = threshold;
    body["found"] = r.found;
    body["outer"] = r.found ? cat.object_name(r.outer) : "";
    body["scope"] = r.scope;
    body["provenance"] = kProvenanceInternal;
    o.body = render(body, common);
    return o;
  }
};

// ------------------------------------------------------------------ degree
struct DegreeCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, cls_name, object, kind_name = "structural";
  bool all = false, oracle = false;
  int universe = 0, b_max = 0, k_max = 2, max_blocks = 0;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("degree", "Ramsey degrees: exact, oracle, bounded");
    sub->add_option("--cat", cat_file, "Category JSON file");
    sub->add_option("--class", cls_name, "graph|poset|linord|digraph");
    sub->add_option("--object", object, "Object name or structure spec");
    sub->add_flag("--all", all, "Every object of the category");
    sub->add_flag("--oracle", oracle, "Closed-form class degree");
    sub->add_option("--kind", kind_name, "structural|embedding");
    sub->add_option("--universe", universe, "Truncated-universe scan ceiling");
    sub->add_option("--b-max", b_max, "Middle-object size ceiling (universe)");
    sub->add_option("--k-max", k_max, "Palette ceiling (universe)");
    sub->add_option("--max-blocks", max_blocks, "Palette override (exact)");
    add_common(sub, common);
  }

  json exact_json(const FinCategory& cat, int obj, ArrowKind kind) const {
    const DegreeResult r =
        degree_exact_finite(cat, obj, kind, common.bell, max_blocks);
    json d;
    d["value"] = ext_json(r.value);
    d["saturation_colors"] = r.saturation_colors;
    d["method"] = r.method;
    d["certificate"] = r.certificate;
    d["scope"] = r.scope;
    return d;
  }

  Outcome run(const CacheGate& gate) const {
    const ArrowKind kind = arrow_kind_from_name(kind_name);
    Outcome o;
    o.canon = {"degree"};
    if (!cat_file.empty()) {
      o.canon.insert(o.canon.end(), {"--cat", cat_file});
      if (all)
        o.canon.push_back("--all");
      else if (!object.empty())
        o.canon.insert(o.canon.end(), {"--object", object});
      else
        throw ValidationError("degree needs --object or --all");
      if (max_blocks > 0)
        o.canon.insert(o.canon.end(),
                       {"--max-blocks", std::to_string(max_blocks)});
      o.files = {cat_file};
    } else if (!cls_name.empty()) {
      if (object.empty()) throw ValidationError("degree needs --object");
      o.canon.insert(o.canon.end(), {"--class", cls_name, "--object", object});
      if (oracle) {
        o.canon.push_back("--oracle");
      } else if (universe > 0) {
        o.canon.insert(o.canon.end(),
                       {"--universe", std::to_string(universe), "--b-max",
                        std::to_string(b_max > 0 ? b_max : universe), "--k-max",
                        std::to_string(k_max)});
      } else {
        throw ValidationError("class degrees need --oracle or --universe");
      }
    } else {
      throw ValidationError("degree needs --cat or --class");
    }
    o.canon.insert(o.canon.end(), {"--kind", arrow_kind_name(kind)});
    push_common(o.canon, common);
    o.cacheable = true;
    if (gate.probe(o)) return o;

    json body;
    body["command"] = "degree";
    body["kind"] = arrow_kind_name(kind);
    Table table;
    table.header = {"object", "kind", "value", "saturation_colors", "method"};

    if (!cat_file.empty()) {
      const FinCategory cat = load_category(cat_file);
      body["provenance"] = kProvenanceInternal;
      if (all) {
        json per = json::object();
        for (int i = 0; i < cat.object_count(); ++i) {
          json d = exact_json(cat, i, kind);
          table.rows.push_back({cat.object_name(i), arrow_kind_name(kind),
                                ext_text(d["value"]),
                                std::to_string(d["saturation_colors"].get<int>()),
                                d["method"].get<std::string>()});
          per[cat.object_name(i)] = std::move(d);
        }
        body["objects"] = per;
      } else {
        const int obj = cat.object_index(object);
        json d = exact_json(cat, obj, kind);
        table.rows.push_back({object, arrow_kind_name(kind), ext_text(d["value"]),
                              std::to_string(d["saturation_colors"].get<int>()),
                              d["method"].get<std::string>()});
        body["object"] = object;
        for (auto& [key, v] : d.items()) body[key] = v;
      }
    } else {
      const StructureClass cls = structure_class_from_name(cls_name);
      const Structure s = parse_structure_arg(cls, object);
      body["class"] = structure_class_name(cls);
      body["object"] = structure_default_name(s);
      if (oracle) {
        ExtNat value = structural_degree_oracle(s);
        if (kind == ArrowKind::embedding)
          value = value * ExtNat(automorphism_count(s));
        body["value"] = ext_json(value);
        body["route"] = "oracle";
        body["scope"] = "closed form for the structure class";
        body["provenance"] = kProvenanceOracle;
        table.rows.push_back({structure_default_name(s), arrow_kind_name(kind),
                              value.is_finite() ? std::to_string(value.value())
                                                : "inf",
                              "-", "oracle"});
      } else {
        ArrowOptions opts;
        opts.threads = common.threads;
        opts.bell_budget = common.bell;
        const int bm = b_max > 0 ? b_max : universe;
        const DegreeBounds r =
            degree_bounds_universe(cls, s, universe, bm, k_max, kind, opts);
        body["lower"] = ext_json(r.lower);
        body["upper"] = ext_json(r.upper);
        body["scope"] = r.scope;
        body["witnesses"] = r.witnesses;
        body["oracle_note"] = r.oracle_note;
        body["route"] = "universe";
        body["provenance"] = kProvenanceInternal;
      }
    }
    o.body = common.tsv && !table.rows.empty() ? render_tsv(table)
                                               : render(body, common);
    return o;
  }
};

// --------------------------------------------------------------- essential
struct EssentialCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, a, b, mode_name = "graded", h_name = "boltzmann";
  std::string candidates, lambda;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("essential", "Essential partitions of (b choose a)");
    sub->add_option("--cat", cat_file, "Category JSON file")->required();
    sub->add_option("--a", a, "Pattern object")->required();
    sub->add_option("--b", b, "Middle object")->required();
    sub->add_option("--mode", mode_name, "literal|graded|graded:K");
    sub->add_option("--H", h_name, "shannon|boltzmann (minimum search)");
    sub->add_option("--candidates", candidates, "Comma-separated object names");
    sub->add_option("--lambda", lambda,
                    "Partition to test (restricted-growth string)");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate& gate) const {
    const EssentialMode mode = essential_mode_from_name(mode_name);
    const EntropyKind h = entropy_kind_from_name(h_name);
    Outcome o;
    o.canon = {"essential", "--cat", cat_file, "--a", a, "--b", b, "--mode",
               essential_mode_name(mode), "--H", entropy_kind_name(h)};
    if (!candidates.empty()) {
      o.canon.push_back("--candidates");
      o.canon.push_back(candidates);
    }
    if (!lambda.empty()) {
      o.canon.push_back("--lambda");
      o.canon.push_back(Partition::parse_rgs(lambda).rgs_string());
    }
    push_common(o.canon, common);
    o.files = {cat_file};
    o.cacheable = true;
    if (gate.probe(o)) return o;

    const FinCategory cat = load_category(cat_file);
    const int oa = cat.object_index(a);
    const int ob = cat.object_index(b);
    std::vector<int> cands;
    if (candidates.empty()) {
      cands = upset(cat, ob);
    } else {
      for (const auto& name : split_csv(candidates))
        cands.push_back(cat.object_index(name));
    }
    const EssentialContext ctx(cat, oa, ob, cands, common.bell);

    json body;
    body["command"] = "essential";
    body["a"] = a;
    body["b"] = b;
    body["mode"] = essential_mode_name(mode);
    body["class_count"] = ctx.base().class_count();
    body["provenance"] = kProvenanceInternal;
    if (!lambda.empty()) {
      const Partition lam = Partition::parse_rgs(lambda);
      const EssentialResult r = ctx.check(lam, mode);
      body["lambda"] = lam.rgs_string();
      body["essential"] = r.essential;
      body["witness"] =
          r.essential ? cat.object_name(ctx.candidate(r.witness)) : "";
      body["colors_used"] = r.colors_used;
      body["scope"] = r.scope;
    } else {
      const EssentialContext::MinResult r = ctx.essential_min(mode, h);
      body["H"] = entropy_kind_name(h);
      body["min_block_count"] = r.min_block_count;
      body["min_entropy"] = r.min_entropy;
      body["argmin_blocks"] = r.argmin_blocks.rgs_string();
      body["argmin_entropy"] = r.argmin_entropy.rgs_string();
      body["witness_blocks"] =
          r.witness_blocks >= 0
              ? cat.object_name(ctx.candidate(r.witness_blocks))
              : "";
      body["witness_entropy"] =
          r.witness_entropy >= 0
              ? cat.object_name(ctx.candidate(r.witness_entropy))
              : "";
      body["colors_used"] = r.colors_used;
      body["scope"] = r.scope;
    }
    o.body = render(body, common);
    return o;
  }
};

// ----------------------------------------------------------------- entropy
struct EntropyCmd {
  CLI::App* sub = nullptr;
  std::string cat_file, cls_name, cls2_name, object, object2;
  std::string h_name = "boltzmann", mode_name = "graded";
  int truncation = 0;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("entropy", "Ramsey entropy of an object");
    sub->add_option("--cat", cat_file, "Category JSON file");
    sub->add_option("--class", cls_name, "graph|poset|linord|digraph");
    sub->add_option("--class2", cls2_name, "Second factor class (product)");
    sub->add_option("--object", object, "Object name or structure spec");
    sub->add_option("--object2", object2, "Second factor object (product)");
    sub->add_option("--H", h_name, "shannon|boltzmann");
    sub->add_option("--mode", mode_name, "literal|graded|graded:K");
    sub->add_option("--truncation", truncation, "Upset ceiling (oracle route)");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate& gate) const {
    const EntropyKind h = entropy_kind_from_name(h_name);
    const EssentialMode mode = essential_mode_from_name(mode_name);
    if (object.empty()) throw ValidationError("entropy needs --object");
    Outcome o;
    o.canon = {"entropy"};
    if (!cat_file.empty()) {
      o.canon.insert(o.canon.end(),
                     {"--cat", cat_file, "--object", object, "--H",
                      entropy_kind_name(h), "--mode", essential_mode_name(mode)});
      o.files = {cat_file};
    } else if (!cls_name.empty()) {
      if (truncation <= 0)
        throw ValidationError("the oracle route needs --truncation");
      o.canon.insert(o.canon.end(), {"--class", cls_name, "--object", object});
      if (!object2.empty())
        o.canon.insert(o.canon.end(),
                       {"--class2", cls2_name.empty() ? cls_name : cls2_name,
                        "--object2", object2});
      o.canon.insert(o.canon.end(), {"--truncation", std::to_string(truncation),
                                     "--H", entropy_kind_name(h)});
    } else {
      throw ValidationError("entropy needs --cat or --class");
    }
    push_common(o.canon, common);
    o.cacheable = true;
    if (gate.probe(o)) return o;

    json body;
    body["command"] = "entropy";
    body["H"] = entropy_kind_name(h);
    RamseyEntropyReport r;
    if (!cat_file.empty()) {
      const FinCategory cat = load_category(cat_file);
      EntropyConfig cfg{h, mode, common.bell};
      r = ramsey_entropy_finite(cat, cat.object_index(object), cfg);
      body["object"] = object;
      body["mode"] = essential_mode_name(mode);
      body["provenance"] = kProvenanceInternal;
    } else {
      const StructureClass cls = structure_class_from_name(cls_name);
      const Structure s = parse_structure_arg(cls, object);
      body["class"] = structure_class_name(cls);
      body["object"] = structure_default_name(s);
      body["truncation"] = truncation;
      body["provenance"] = kProvenanceOracle;
      if (!object2.empty()) {
        const StructureClass cls2 =
            cls2_name.empty() ? cls : structure_class_from_name(cls2_name);
        const Structure s2 = parse_structure_arg(cls2, object2);
        body["class2"] = structure_class_name(cls2);
        body["object2"] = structure_default_name(s2);
        r = ramsey_entropy_oracle_product(cls, s, cls2, s2, truncation, h);
      } else {
        r = ramsey_entropy_oracle(cls, s, truncation, h);
      }
    }

    json phi = json::object();
    Table table;
    table.header = {"object", "phi"};
    for (const auto& [name, value] : r.phi) {
      phi[name] = ext_json(value);
      table.rows.push_back({name, value.to_string()});
    }
    body["phi"] = phi;
    body["r"] = ext_json(r.value);
    body["route"] = r.route;
    body["scope"] = r.scope;
    body["argmin"] = r.argmin;
    table.rows.push_back({"(r)", r.value.to_string()});
    o.body = common.tsv ? render_tsv(table) : render(body, common);
    return o;
  }
};

// ------------------------------------------------------------------- suite
struct SuiteCmd {
  CLI::App* sub = nullptr;
  std::string corpus_dir, h_name = "boltzmann", which = "all";
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("suite", "Law suites over a corpus directory");
    sub->add_option("--corpus", corpus_dir, "Directory of category JSON files")
        ->required();
    sub->add_option("--H", h_name, "shannon|boltzmann (report identification)");
    sub->add_option("--which", which, "degrees|identity|entropy|all");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate&) const {
    entropy_kind_from_name(h_name);  // validated, echoed below
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& de : std::filesystem::directory_iterator(corpus_dir, ec))
      if (de.is_regular_file() && de.path().extension() == ".json")
        files.push_back(de.path().string());
    if (ec)
      throw ValidationError("cannot read corpus directory " + corpus_dir);
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw ValidationError("no .json category files in " + corpus_dir);

    std::vector<FinCategory> cats;
    cats.reserve(files.size());
    for (const auto& f : files) cats.push_back(load_category(f));
    std::vector<CorpusCategory> views;
    json flags = json::object();
    json names = json::array();
    for (const auto& cat : cats) {
      const bool amal = check_amalgamation(cat).holds;
      views.push_back({&cat, amal});
      flags[cat.name()] = amal;
      names.push_back(cat.name());
    }
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < cats.size() && pairs.size() < 8; i += 2)
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));

    json body;
    body["command"] = "suite";
    body["H"] = h_name;
    body["which"] = which;
    body["categories"] = names;
    body["amalgamation"] = flags;
    json pj = json::array();
    for (const auto& [x, y] : pairs)
      pj.push_back(cats[static_cast<std::size_t>(x)].name() + " x " +
                   cats[static_cast<std::size_t>(y)].name());
    body["product_pairs"] = pj;

    bool passed = true;
    json reports = json::object();
    if (which == "degrees" || which == "all") {
      const SuiteReport r = degree_law_suite(views, pairs, common.bell);
      passed = passed && r.passed;
      reports["degrees"] = suite_json(r);
    }
    if (which == "identity" || which == "all") {
      const SuiteReport r = boltzmann_identity_check(views, common.bell);
      passed = passed && r.passed;
      reports["identity"] = suite_json(r);
    }
    if (which == "entropy" || which == "all") {
      const SuiteReport r = entropy_theorem_suite(views, pairs, common.bell);
      passed = passed && r.passed;
      reports["entropy"] = suite_json(r);
    }
    if (reports.empty())
      throw ValidationError("unknown suite '" + which +
                            "' (expected degrees, identity, entropy, or all)");
    body["reports"] = reports;
    body["passed"] = passed;
    body["provenance"] = kProvenanceInternal;
    Outcome o;
    o.body = render(body, common);
    return o;
  }
};

// ----------------------------------------------------------------- functor
struct FunctorCmd {
  CLI::App* sub = nullptr;
  std::string file, builtin, cat_file, enforce = "strict";
  std::string h_name = "boltzmann", mode_name = "graded";
  int n_max = 3;
  bool properties_only = false;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("functor", "Validate a functor and run its checks");
    sub->add_option("--file", file, "Functor JSON file");
    sub->add_option("--builtin", builtin, "identity|order-forgetting|collapse");
    sub->add_option("--cat", cat_file, "Category file (builtin identity)");
    sub->add_option("--n", n_max, "Vertex ceiling (order-forgetting)");
    sub->add_option("--enforce", enforce,
                    "strict refuses when a hypothesis fails; observe records");
    sub->add_option("--H", h_name, "shannon|boltzmann");
    sub->add_option("--mode", mode_name, "literal|graded|graded:K");
    sub->add_flag("--properties-only", properties_only,
                  "Skip the entropy comparison");
    add_common(sub, common, false);
  }

  Outcome run(const CacheGate&) const {
    EnforcementMode mode;
    if (enforce == "strict")
      mode = EnforcementMode::strict;
    else if (enforce == "observe")
      mode = EnforcementMode::observe;
    else
      throw ValidationError("unknown enforcement '" + enforce +
                            "' (expected strict or observe)");

    // Owned storage so the functor table's category pointers stay valid.
    std::optional<LoadedFunctor> loaded;
    std::optional<OrderForgettingInstance> forgetting;
    std::unique_ptr<FinCategory> identity_cat;
    std::vector<CorpusEntry> corpus;
    FunctorTable local;
    const FunctorTable* table = nullptr;
    if (!file.empty()) {
      loaded = functor_from_json_file(file);
      table = &loaded->table;
    } else if (builtin == "identity") {
      if (cat_file.empty()) throw ValidationError("builtin identity needs --cat");
      identity_cat = std::make_unique<FinCategory>(load_category(cat_file));
      local = identity_functor(*identity_cat);
      table = &local;
    } else if (builtin == "order-forgetting") {
      forgetting = order_forgetting_functor(n_max);
      table = &forgetting->table;
    } else if (builtin == "collapse") {
      corpus = build_corpus();
      const FinCategory* edup = nullptr;
      const FinCategory* e = nullptr;
      for (const auto& entry : corpus) {
        if (entry.name == "Edup") edup = &entry.cat;
        if (entry.name == "E") e = &entry.cat;
      }
      if (!edup || !e) throw Error("internal: corpus lacks Edup or E");
      local = collapse_functor(*edup, *e);
      table = &local;
    } else {
      throw ValidationError("functor needs --file or --builtin");
    }

    const FunctorProperties props = functor_properties(*table);
    json body;
    body["command"] = "functor";
    body["source"] = table->source->name();
    body["target"] = table->target->name();
    body["finitary"] = props.finitary;
    body["fiber_sizes"] = props.fiber_sizes;
    body["reasonable"] = props.reasonable;
    body["reasonable_witness"] = props.reasonable_witness;
    body["unique_restrictions"] = props.unique_restrictions;
    body["unique_witness"] = props.unique_witness;
    body["expansion"] = props.expansion;
    body["expansion_records"] = props.expansion_records;
    body["target_directed"] = props.target_directed;
    body["enforce"] = enforce;
    if (!properties_only) {
      EntropyConfig cfg{entropy_kind_from_name(h_name),
                        essential_mode_from_name(mode_name), common.bell};
      body["check"] = suite_json(entropy_nondecreasing_check(*table, cfg, mode));
    }
    body["provenance"] = kProvenanceInternal;
    Outcome o;
    o.body = render(body, common);
    return o;
  }
};

// ------------------------------------------------------------------- cache
struct CacheCmd {
  CLI::App* sub = nullptr;
  CLI::App* gc = nullptr;
  CLI::App* verify = nullptr;
  double max_mb = 0, max_age_days = 0;
  int sample = 0;
  CommonOpts common;

  void attach(CLI::App& app) {
    sub = app.add_subcommand("cache", "Manage the report cache");
    sub->require_subcommand(1);
    gc = sub->add_subcommand("gc", "Remove old entries by age, then size");
    gc->add_option("--max-mb", max_mb, "Total size bound in megabytes");
    gc->add_option("--max-age-days", max_age_days, "Age bound in days");
    gc->add_option("--cache-dir", common.cache_dir, "Cache directory");
    gc->add_flag("--tsv", common.tsv, "Tab-separated output");
    verify = sub->add_subcommand("verify",
                                 "Re-run stored commands and compare bodies");
    verify->add_option("--sample", sample, "Entries to re-check (0 = all)");
    verify->add_option("--cache-dir", common.cache_dir, "Cache directory");
    verify->add_flag("--tsv", common.tsv, "Tab-separated output");
  }

  std::string resolve_dir() const {
    if (!common.cache_dir.empty()) return common.cache_dir;
    if (const char* env = std::getenv("RAMSEYLAB_CACHE")) return env;
    throw ValidationError(
        "no cache directory: pass --cache-dir or set RAMSEYLAB_CACHE");
  }

  Outcome run(std::ostream& err) const {
    const ReportCache cache(resolve_dir(), err);
    json body;
    if (gc->parsed()) {
      const auto stats = cache.gc(max_mb, max_age_days);
      body["command"] = "cache-gc";
      body["removed"] = stats.removed;
      body["kept"] = stats.kept;
      body["kept_bytes"] = stats.kept_bytes;
    } else {
      const auto outcome = cache.verify(
          sample,
          [](const std::vector<std::string>& argv) -> std::optional<std::string> {
            std::ostringstream body_out, diag;
            if (run_cli_impl(argv, body_out, diag, false) != 0)
              return std::nullopt;
            return body_out.str();
          });
      body["command"] = "cache-verify";
      body["checked"] = outcome.checked;
      body["matched"] = outcome.matched;
      body["mismatched"] = outcome.mismatched;
      body["errors"] = outcome.errors;
      body["details"] = outcome.details;
    }
    Outcome o;
    o.body = render(body, common);
    return o;
  }
};

int run_cli_impl(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err, bool allow_cache) {
  CLI::App app{"Finite-category Ramsey degrees, essential partitions, and"
               " Ramsey entropies"};
  app.name("ramseylab");
  app.require_subcommand(1);

  ValidateCmd validate;
  StructuresCmd structures;
  HomCmd hom;
  SubobjCmd subobj;
  ArrowCmd arrow;
  WitnessCmd witness;
  DegreeCmd degree;
  EssentialCmd essential;
  EntropyCmd entropy;
  SuiteCmd suite;
  FunctorCmd functor;
  CacheCmd cachecmd;
  validate.attach(app);
  structures.attach(app);
  hom.attach(app);
  subobj.attach(app);
  arrow.attach(app);
  witness.attach(app);
  degree.attach(app);
  essential.attach(app);
  entropy.attach(app);
  suite.attach(app);
  functor.attach(app);
  cachecmd.attach(app);

  std::vector<const char*> argv;
  argv.push_back("ramseylab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 64;
  }

  auto gate_for = [&](const CommonOpts& common) {
    CacheGate gate;
    gate.err = &err;
    if (!allow_cache) return gate;
    std::string dir = common.cache_dir;
    if (dir.empty())
      if (const char* env = std::getenv("RAMSEYLAB_CACHE")) dir = env;
    if (!dir.empty()) gate.cache = std::make_unique<ReportCache>(dir, err);
    return gate;
  };

  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    Outcome outcome;
    CacheGate gate;
    gate.err = &err;
    if (validate.sub->parsed()) {
      outcome = validate.run(gate);
    } else if (structures.sub->parsed()) {
      outcome = structures.run(gate);
    } else if (hom.sub->parsed()) {
      gate = gate_for(hom.common);
      outcome = hom.run(gate);
    } else if (subobj.sub->parsed()) {
      gate = gate_for(subobj.common);
      outcome = subobj.run(gate);
    } else if (arrow.sub->parsed()) {
      gate = gate_for(arrow.common);
      outcome = arrow.run(gate);
    } else if (witness.sub->parsed()) {
      gate = gate_for(witness.common);
      outcome = witness.run(gate);
    } else if (degree.sub->parsed()) {
      gate = gate_for(degree.common);
      outcome = degree.run(gate);
    } else if (essential.sub->parsed()) {
      gate = gate_for(essential.common);
      outcome = essential.run(gate);
    } else if (entropy.sub->parsed()) {
      gate = gate_for(entropy.common);
      outcome = entropy.run(gate);
    } else if (suite.sub->parsed()) {
      outcome = suite.run(gate);
    } else if (functor.sub->parsed()) {
      outcome = functor.run(gate);
    } else if (cachecmd.sub->parsed()) {
      outcome = cachecmd.run(err);
    } else {
      throw Error("internal: no subcommand dispatched");
    }
    out << outcome.body;
    gate.store(outcome);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    code = 3;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    code = 2;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    code = 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = 1;
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;
  err << "wall_ms="
      << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
      << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return run_cli_impl(args, out, err, true);
}

}  // namespace ramseylab
