// nbl: command-line front end. One subcommand per process; results go to
// stdout or --out and are cached under $NBL_CACHE (default .nbl-cache).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "nbl/errors.hpp"
#include "nbl/io.hpp"
#include "nbl/verify.hpp"

using namespace nbl;

namespace {

struct Args {
  std::string group;
  std::string r;
  std::string classes = "all";
  std::string base = "p1";
  std::string equiv = "marked";
  std::string cover = "any";
  std::string subgroup;
  std::string profile;
  std::string xi;
  std::string tuple;
  std::string extension = "builtin";
  std::string input;
  std::string x, y;
  std::string out;
  std::size_t limit = 1000;
  std::size_t subgroup_id = 0;
  bool has_subgroup_id = false;
  unsigned threads = 1;
  bool no_cache = false;
  bool strict = false;
  std::uint64_t max_tuples = 10'000'000;
  std::uint64_t max_orbit = 10'000'000;
  long long timeout = 300;
  // verify
  std::string suite;
  std::vector<std::string> groups;
  std::size_t samples = 0;
  std::uint64_t seed = 20240607;
};

struct Output {
  std::string text;
  int status = 0;  // 2: partial result
};

std::vector<std::string> items(const std::string& text) { return split_top_level(text, ','); }

std::pair<long long, long long> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const long long r = std::stoll(text);
      return {r, r};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw ParseError("bad --r value '" + text + "' (expected N or A..B)");
  }
}

std::size_t single_r(const std::string& text) {
  if (text.empty()) throw ParseError("--r is required");
  auto [a, b] = parse_range(text);
  if (a != b || a < 0) throw ParseError("--r must be a single nonnegative integer here");
  return static_cast<std::size_t>(a);
}

std::vector<Elem> parse_elements(const PermGroup& g, const std::string& text) {
  std::vector<Elem> out;
  for (const std::string& item : items(text)) out.push_back(g.index_of(Perm::from_cycles(item, g.degree())));
  return out;
}

EnumerationSpec make_spec(const PermGroup& g, const Args& a) {
  EnumerationSpec s;
  s.base = parse_base(a.base);
  s.equivalence = parse_equivalence(a.equiv);
  if (a.cover == "any") {
    s.cover = CoverMode::any();
  } else if (a.cover == "galois") {
    s.cover = CoverMode::galois(a.subgroup.empty() ? std::vector<Elem>{} : parse_elements(g, a.subgroup));
  } else if (a.cover == "transitive") {
    s.cover = CoverMode::transitive();
  } else {
    throw ParseError("unknown cover mode '" + a.cover + "' (expected any, galois or transitive)");
  }
  if (!a.profile.empty()) {
    ICIProfile p;
    p.counts = parse_class_counts(g, a.profile);
    s.classes = p;
  } else {
    s.classes = parse_class_list(g, a.classes);
  }
  return s;
}

json spec_to_json(const PermGroup& g, const EnumerationSpec& s) {
  json cover;
  switch (s.cover.kind) {
    case CoverMode::Kind::Any: cover = "any"; break;
    case CoverMode::Kind::Galois: cover = {{"galois", tuple_to_json(g, s.cover.subgroup)}}; break;
    case CoverMode::Kind::Transitive: cover = "transitive"; break;
  }
  json classes;
  if (std::holds_alternative<AnyClass>(s.classes)) {
    classes = "all";
  } else if (const auto* ids = std::get_if<std::vector<ClassId>>(&s.classes)) {
    classes = json::array();
    for (ClassId c : *ids) classes.push_back(g.element(g.classes().representative(c)).cycles());
  } else {
    classes = {{"profile", ici_to_json(g, std::get<ICIProfile>(s.classes))}};
  }
  return {{"base", to_string(s.base)}, {"equivalence", to_string(s.equivalence)}, {"cover", cover}, {"classes", classes}};
}

OrbitOptions orbit_options(const Args& a) {
  OrbitOptions o;
  o.threads = std::max(1U, a.threads);
  o.budget.max_tuples = a.max_tuples;
  o.budget.max_orbit = a.max_orbit;
  o.budget.timeout = std::chrono::seconds(a.timeout);
  return o;
}

CentralExtension load_extension(const PermGroup& g, const std::string& ref) {
  if (ref == "builtin") {
    if (!same_group(g, parse_group_spec("A4"))) {
      throw PreconditionError("extension-mismatch: the builtin extension covers A4");
    }
    return builtin_a4_extension();
  }
  std::ifstream in(ref);
  if (!in) throw ParseError("cannot read extension file " + ref);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("extension file " + ref + ": " + e.what());
  }
  return extension_from_json(g, j);
}

std::string extension_key(const std::string& ref) {
  if (ref == "builtin") return ref;
  std::ifstream in(ref);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

Component component_by_id(const PermGroup& g, const Args& a, const std::string& id) {
  if (a.input.empty()) throw ParseError("--input (a components JSON file) is required");
  std::ifstream in(a.input);
  if (!in) throw ParseError("cannot read " + a.input);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(a.input + ": " + e.what());
  }
  const json& list = j.is_object() && j.contains("components") ? j.at("components") : j;
  if (!list.is_array()) throw ParseError(a.input + " holds no component list");
  for (const json& rec : list) {
    if (rec.value("id", "") == id) return component_from_json(g, rec, orbit_options(a));
  }
  throw PreconditionError("component " + id + " not found in " + a.input);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

Output cmd_classes(const PermGroup& g, const Args&) {
  json out = json::array();
  const ClassTable& t = g.classes();
  for (ClassId c = 0; c < t.size(); ++c) {
    const Elem rep = t.representative(c);
    out.push_back({{"id", c},
                   {"representative", g.element(rep).cycles()},
                   {"size", t[c].members.size()},
                   {"element_order", g.element_order(rep)}});
  }
  return {dump(out)};
}

Output cmd_subgroups(const PermGroup& g, const Args&) {
  json out = json::array();
  for (const SubgroupClass& s : g.subgroup_catalog().classes()) {
    out.push_back({{"id", s.id},
                   {"order", s.order},
                   {"conjugates", s.conjugates},
                   {"generators", tuple_to_json(g, s.generators)}});
  }
  return {dump(out)};
}

Output cmd_nielsen(const PermGroup& g, const Args& a) {
  const std::size_t r = single_r(a.r);
  const EnumerationSpec s = make_spec(g, a);
  json tuples = json::array();
  std::uint64_t count = 0;
  const EnumerationStats st = enumerate_nielsen(
      g, r, s,
      [&](std::span<const Elem> t) {
        if (count++ < a.limit) tuples.push_back(tuple_to_json(g, t));
      },
      orbit_options(a).budget);
  json out = {{"group", g.name()}, {"r", r},          {"spec", spec_to_json(g, s)},
              {"count", count},    {"listed", tuples.size()}, {"tuples", tuples},
              {"complete", st.complete}};
  if (!st.complete) out["reason"] = st.stop_reason;
  return {dump(out), st.complete ? 0 : 2};
}

Output cmd_components(const PermGroup& g, const Args& a) {
  const std::size_t r = single_r(a.r);
  const EnumerationSpec s = make_spec(g, a);
  const Decomposition d = decompose_components(g, r, s, orbit_options(a));
  json comps = json::array();
  for (const Component& c : d.components) comps.push_back(component_to_json(g.name(), c));
  json out = {{"group", g.name()}, {"r", r}, {"spec", spec_to_json(g, s)}, {"tuples", d.tuples},
              {"components", comps}, {"complete", d.complete}};
  if (!d.complete) out["reason"] = d.phase + ": " + d.reason;
  return {dump(out), d.complete ? 0 : 2};
}

Output cmd_series(const PermGroup& g, const Args& a) {
  if (a.r.empty()) throw ParseError("--r A..B is required");
  auto [lo, hi] = parse_range(a.r);
  if (lo < 0 || hi < lo) throw ParseError("invalid r range " + a.r);
  const CountSeries s = count_series(g, make_spec(g, a), lo, hi, orbit_options(a));
  return {series_to_csv(s), s.truncated ? 2 : 0};
}

Output cmd_concat(const PermGroup& g, const Args& a) {
  const Component x = component_by_id(g, a, a.x);
  const Component y = component_by_id(g, a, a.y);
  ComponentResolver resolver(g, x.base, x.equivalence, orbit_options(a));
  const Component xy = concat(x, y, resolver);
  const CommutationReport comm = commutation_check(x, y, resolver);
  json out = component_to_json(g.name(), xy);
  out["x"] = a.x;
  out["y"] = a.y;
  out["commutes"] = comm.holds;
  return {dump(out)};
}

Output cmd_twist(const PermGroup& g, const Args& a) {
  const Component x = component_by_id(g, a, a.x);
  const Component y = component_by_id(g, a, a.y);
  ComponentResolver resolver(g, x.base, x.equivalence, orbit_options(a));
  const TwistReport rep = hm_twist_set(x, y, resolver);
  json out = twist_to_json(g.name(), rep);
  json records = json::array();
  for (const Component& c : rep.twists) records.push_back(component_to_json(g.name(), c));
  out["twist_components"] = records;
  return {dump(out)};
}

std::vector<ClassId> class_list(const PermGroup& g, const Args& a) {
  const ClassConstraint cc = parse_class_list(g, a.classes);
  if (const auto* ids = std::get_if<std::vector<ClassId>>(&cc)) return *ids;
  std::vector<ClassId> all;
  for (ClassId c = 1; c < g.classes().size(); ++c) all.push_back(c);
  return all;
}

Output cmd_splitting(const PermGroup& g, const Args& a) {
  const std::vector<ClassId> c = class_list(g, a);
  json out;
  if (a.has_subgroup_id) {
    out = splitting_to_json(g, splitting_number(g, a.subgroup_id, c));
  } else if (!a.subgroup.empty()) {
    out = splitting_to_json(g, splitting_number(g, closure(g, parse_elements(g, a.subgroup)), c));
  } else {
    const NonSplitReport ns = is_nonsplitting(g, c);
    out = {{"nonsplitting", ns.holds},
           {"witness", ns.witness ? splitting_to_json(g, *ns.witness) : json(nullptr)}};
  }
  return {dump(out)};
}

Output cmd_hf(const PermGroup& g, const Args& a) {
  if (a.subgroup.empty()) throw ParseError("--subgroup (generators of H) is required");
  if (a.xi.empty()) throw ParseError("--xi is required, e.g. --xi \"(1 2 3)=1\"");
  const std::vector<Elem> gens = parse_elements(g, a.subgroup);
  const auto xi = parse_class_counts(g, a.xi);
  std::vector<ClassId> c;
  for (const auto& [cls, n] : xi) c.push_back(cls);
  json values = json::array();
  auto [lo, hi] = parse_range(a.r.empty() ? std::string("1") : a.r);
  if (lo < 0 || hi < lo) throw ParseError("invalid r range " + a.r);
  int status = 0;
  for (long long r = lo; r <= hi; ++r) {
    const HfResult v = hf_count(g, gens, xi, static_cast<std::size_t>(r), a.strict, orbit_options(a));
    json row = {{"r", r}, {"count", v.count}, {"tuple_length", v.tuple_length}, {"complete", v.complete}};
    if (!v.complete) {
      row["reason"] = v.reason;
      status = 2;
    }
    values.push_back(row);
    if (!v.complete) break;
  }
  const SplittingDatum omega = splitting_number(g, closure(g, gens), c);
  json out = {{"group", g.name()},
              {"subgroup", tuple_to_json(g, gens)},
              {"reading", a.strict ? "strict-per-class" : "collective"},
              {"omega", omega.omega},
              {"values", values}};
  return {dump(out), status};
}

Output cmd_lift(const PermGroup& g, const Args& a) {
  const CentralExtension e = load_extension(g, a.extension);
  json out = {{"cover_order", e.cover().order()}, {"kernel", tuple_to_json(e.cover(), e.kernel())}};
  json lifts = json::array();
  for (ClassId c : e.classes()) {
    lifts.push_back({g.element(g.classes().representative(c)).cycles(), e.cover().element(e.representative_lift(c)).cycles()});
  }
  out["lifts"] = lifts;
  if (!a.tuple.empty()) {
    const NielsenTuple t(g, parse_elements(g, a.tuple));
    const LiftValue v = lifting_invariant(t, e);
    out["tuple"] = tuple_to_json(g, t.entries());
    out["value"] = e.cover().element(v.element).cycles();
    out["degree"] = v.degree;
    out["central"] = e.project(v.element) == PermGroup::identity();
  }
  return {dump(out)};
}

Output cmd_rational(const PermGroup& g, const Args& a) {
  ICIProfile p;
  if (!a.profile.empty()) p.counts = parse_class_counts(g, a.profile);
  const RationalityResult res = is_globally_rational(g, p);
  json out = {{"group", g.name()}, {"profile", ici_to_json(g, p)}, {"rational", res.rational}};
  out["witness_m"] = res.witness_m ? json(*res.witness_m) : json(nullptr);
  out["moved_class"] = res.moved_class ? json(g.element(g.classes().representative(*res.moved_class)).cycles())
                                       : json(nullptr);
  return {dump(out)};
}

Output cmd_cpfv(const PermGroup& g, const Args& a) {
  if (a.r.empty()) throw ParseError("--r A..B is required");
  auto [lo, hi] = parse_range(a.r);
  if (lo < 0 || hi < lo) throw ParseError("invalid r range " + a.r);
  const CentralExtension e = load_extension(g, a.extension);
  const CpfvReport rep = cpfv_probe(g, e, make_spec(g, a), static_cast<std::size_t>(lo),
                                    static_cast<std::size_t>(hi), orbit_options(a));
  return {dump(cpfv_to_json(g.name(), e, rep)), rep.complete ? 0 : 2};
}

int cmd_verify(const Args& a) {
  VerifyOptions o;
  o.groups = a.groups;
  if (!a.r.empty()) o.r = single_r(a.r);
  o.threads = std::max(1U, a.threads);
  o.seed = a.seed;
  o.samples = a.samples;
  o.timeout = std::chrono::seconds(a.timeout);
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(a.suite);
  }
  bool ok = true;
  for (const std::string& name : names) {
    const SuiteResult res = run_suite(name, o);
    std::cout << (res.passed ? "PASS " : "FAIL ") << res.suite << "  checks=" << res.checks
              << " failures=" << res.failures << " (" << std::fixed << std::setprecision(2) << res.seconds
              << " s)\n";
    for (const auto& n : res.notes) std::cout << "  " << n << '\n';
    for (const auto& f : res.failed) std::cout << "  failed: " << f << '\n';
    ok = ok && res.passed;
  }
  return ok ? 0 : 1;
}

void diagnose(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen classes, braid orbits and component invariants of finite groups"};
  app.require_subcommand(1);
  Args a;

  auto add_group = [&](CLI::App* sub) { sub->add_option("group", a.group, "group spec, e.g. S3 or \"perm(4; (1 2 3), (1 2)(3 4))\"")->required(); };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--threads", a.threads, "worker threads")->capture_default_str();
    sub->add_option("--max-tuples", a.max_tuples, "tuple budget")->capture_default_str();
    sub->add_option("--max-orbit", a.max_orbit, "orbit size budget")->capture_default_str();
    sub->add_option("--timeout-secs", a.timeout, "wall-clock budget")->capture_default_str();
    sub->add_option("--out", a.out, "write the result here instead of stdout");
    sub->add_flag("--no-cache", a.no_cache, "neither read nor write the result cache");
  };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--classes", a.classes, "class reps, or trans / all")->capture_default_str();
    sub->add_option("--profile", a.profile, "exact profile, e.g. \"(1 2)=4\"");
    sub->add_option("--base", a.base, "p1 or a1")->capture_default_str();
    sub->add_option("--equiv", a.equiv, "marked or unmarked")->capture_default_str();
    sub->add_option("--cover", a.cover, "any, galois or transitive")->capture_default_str();
    sub->add_option("--subgroup", a.subgroup, "generators of the Galois group (default: all of G)");
  };

  std::map<std::string, std::function<Output(const PermGroup&, const Args&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    add_group(s);
    add_budget(s);
    handlers[name] = fn;
    return s;
  };

  sub("classes", "conjugacy classes", cmd_classes);
  sub("subgroups", "subgroups up to conjugacy", cmd_subgroups);
  {
    auto* s = sub("nielsen", "enumerate the Nielsen set", cmd_nielsen);
    s->add_option("--r", a.r, "number of branch points")->required();
    s->add_option("--limit", a.limit, "tuples to list")->capture_default_str();
    add_spec(s);
  }
  {
    auto* s = sub("components", "braid orbits of the Nielsen set", cmd_components);
    s->add_option("--r", a.r, "number of branch points")->required();
    add_spec(s);
  }
  {
    auto* s = sub("series", "component counts over a range of r (CSV)", cmd_series);
    s->add_option("--r", a.r, "range A..B")->required();
    add_spec(s);
  }
  for (const char* name : {"concat", "twist"}) {
    auto* s = sub(name, std::string(name) == "concat" ? "product of two components" : "twist set of two components",
                  std::string(name) == "concat" ? cmd_concat : cmd_twist);
    s->add_option("--input", a.input, "JSON output of a components run")->required();
    s->add_option("--x", a.x, "first component id")->required();
    s->add_option("--y", a.y, "second component id")->required();
  }
  {
    auto* s = sub("splitting", "splitting number of a subgroup, or the non-split test", cmd_splitting);
    s->add_option("--classes", a.classes, "class reps, or trans / all")->capture_default_str();
    s->add_option("--subgroup", a.subgroup, "generators of H");
    s->add_option("--subgroup-id", a.subgroup_id, "catalog id of H")->each([&](const std::string&) { a.has_subgroup_id = true; });
  }
  {
    auto* s = sub("hf", "connected H-cover components with prescribed multiplicities", cmd_hf);
    s->add_option("--subgroup", a.subgroup, "generators of H")->required();
    s->add_option("--xi", a.xi, "multiplicity per class, e.g. \"(1 2 3)=1\"")->required();
    s->add_option("--r", a.r, "r or A..B")->required();
    s->add_flag("--hf-strict-per-class", a.strict, "each H-class inside C gets r*xi entries");
  }
  {
    auto* s = sub("lift", "lifting invariant of a tuple", cmd_lift);
    s->add_option("--extension", a.extension, "builtin or an extension JSON file")->capture_default_str();
    s->add_option("--tuple", a.tuple, "entries, e.g. \"(1 2 3),(1 3 2)\"");
  }
  {
    auto* s = sub("rational", "global rationality of an inertia profile", cmd_rational);
    s->add_option("--profile", a.profile, "e.g. \"(1 2 3)=2\"");
  }
  {
    auto* s = sub("cpfv", "components keyed by (group, profile, lift)", cmd_cpfv);
    s->add_option("--extension", a.extension, "builtin or an extension JSON file")->capture_default_str();
    s->add_option("--r", a.r, "range A..B")->required();
    add_spec(s);
  }
  CLI::App* verify = app.add_subcommand("verify", "property and oracle suites");
  verify->add_option("suite", a.suite, "suite name or all")->required();
  verify->add_option("--group", a.groups, "restrict to these groups");
  verify->add_option("--r", a.r, "largest r (suite-specific)");
  verify->add_option("--threads", a.threads)->capture_default_str();
  verify->add_option("--samples", a.samples, "random samples (0: suite default)");
  verify->add_option("--seed", a.seed)->capture_default_str();
  verify->add_option("--timeout-secs", a.timeout)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) return cmd_verify(a);
    const std::string name = app.get_subcommands().front()->get_name();
    const PermGroup g = parse_group_spec(a.group);

    // Everything that can change the primary output goes into the key;
    // --threads, --out and --timeout-secs do not.
    json request = {{"command", name},      {"group", normalize_group_spec(a.group)},
                    {"r", a.r},             {"classes", a.classes},
                    {"profile", a.profile}, {"base", a.base},
                    {"equiv", a.equiv},     {"cover", a.cover},
                    {"subgroup", a.subgroup}, {"xi", a.xi},
                    {"tuple", a.tuple},     {"x", a.x},
                    {"y", a.y},             {"strict", a.strict},
                    {"limit", a.limit},     {"max_tuples", a.max_tuples},
                    {"max_orbit", a.max_orbit}};
    request["subgroup_id"] = a.has_subgroup_id ? json(a.subgroup_id) : json(nullptr);
    if (name == "lift" || name == "cpfv") request["extension"] = extension_key(a.extension);
    if (!a.input.empty()) request["input"] = extension_key(a.input);
    const std::string digest = sha256_hex(request.dump());

    ResultCache cache(ResultCache::default_root());
    std::optional<std::string> hit;
    if (!a.no_cache) hit = cache.get(digest);
    Output result;
    if (hit) {
      result.text = *hit;
    } else {
      result = handlers.at(name)(g, a);
      if (!a.no_cache && result.status == 0) cache.put(digest, result.text);
    }
    if (a.out.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
      out << result.text;
      if (!out.flush()) throw Error("cannot write " + a.out);
    }
    if (result.status == 2) diagnose("budget-exceeded", "partial result written (complete = false)");
    return result.status;
  } catch (const BudgetExceeded& e) {
    diagnose("budget-exceeded", e.what());
    return 2;
  } catch (const ExtensionRejected& e) {
    std::cerr << json{{"error", "extension-rejected"}, {"invariant", e.invariant()}, {"witness", e.witness()}}.dump()
              << '\n';
    return 1;
  } catch (const ParseError& e) {
    diagnose("parse", e.what());
  } catch (const CapExceeded& e) {
    diagnose("cap-exceeded", e.what());
  } catch (const DegenerateInput& e) {
    diagnose("degenerate", e.what());
  } catch (const ForeignElement& e) {
    diagnose("foreign-element", e.what());
  } catch (const PreconditionError& e) {
    diagnose("precondition", e.what());
  } catch (const std::exception& e) {
    diagnose("error", e.what());
  }
  return 1;
}
