#include "nbl/io.hpp"

#include <openssl/sha.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nbl/errors.hpp"

namespace nbl {

std::string to_string(Base b) { return b == Base::Projective ? "p1" : "a1"; }
std::string to_string(Equivalence e) { return e == Equivalence::Marked ? "marked" : "unmarked"; }

Base parse_base(std::string_view s) {
  if (s == "p1" || s == "projective") return Base::Projective;
  if (s == "a1" || s == "affine") return Base::Affine;
  throw ParseError("unknown base '" + std::string(s) + "' (expected p1 or a1)");
}

Equivalence parse_equivalence(std::string_view s) {
  if (s == "marked") return Equivalence::Marked;
  if (s == "unmarked") return Equivalence::Unmarked;
  throw ParseError("unknown equivalence '" + std::string(s) + "' (expected marked or unmarked)");
}

namespace {

ClassId class_by_rep(const PermGroup& g, const std::string& rep) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(rep, g.degree())));
}

bool is_transposition(const Perm& p) {
  std::size_t moved = 0;
  for (Point i = 0; i < p.degree(); ++i) moved += p[i] != i;
  return moved == 2;
}

}  // namespace

ClassConstraint parse_class_list(const PermGroup& g, const std::string& text) {
  if (text == "all" || text.empty()) return AnyClass{};
  std::vector<ClassId> out;
  for (const std::string& item : split_top_level(text, ',')) {
    if (item == "trans") {
      bool any = false;
      for (ClassId c = 0; c < g.classes().size(); ++c) {
        if (is_transposition(g.element(g.classes().representative(c)))) {
          out.push_back(c);
          any = true;
        }
      }
      if (!any) throw PreconditionError(g.name() + " has no 2-cycles");
    } else {
      out.push_back(class_by_rep(g, item));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<ClassId, std::size_t> parse_class_counts(const PermGroup& g, const std::string& text) {
  std::map<ClassId, std::size_t> out;
  for (const std::string& item : split_top_level(text, ',')) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos) throw ParseError("expected <cycles>=<count>, got '" + item + "'");
    std::size_t n = 0;
    try {
      n = std::stoul(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ParseError("bad count in '" + item + "'");
    }
    out[class_by_rep(g, item.substr(0, eq))] += n;
  }
  return out;
}

json tuple_to_json(const PermGroup& g, std::span<const Elem> entries) {
  json out = json::array();
  for (Elem e : entries) out.push_back(g.element(e).cycles());
  return out;
}

std::vector<Elem> tuple_from_json(const PermGroup& g, const json& j) {
  if (!j.is_array()) throw ParseError("a tuple must be a JSON array of cycle strings");
  std::vector<Elem> out;
  for (const auto& item : j) out.push_back(g.index_of(Perm::from_cycles(item.get<std::string>(), g.degree())));
  return out;
}

json ici_to_json(const PermGroup& g, const ICIProfile& profile) {
  json out = json::object();
  for (const auto& [c, n] : profile.counts) {
    out[g.element(g.classes().representative(c)).cycles()] = n;
  }
  return out;
}

ICIProfile ici_from_json(const PermGroup& g, const json& j) {
  if (!j.is_object()) throw ParseError("a profile must be a JSON object");
  ICIProfile p;
  for (const auto& [rep, n] : j.items()) {
    const ClassId c = g.classes().class_of(g.index_of(Perm::from_cycles(rep, g.degree())));
    p.counts[c] += n.get<std::size_t>();
  }
  return p;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 15]);
  }
  return out;
}

std::string component_id(const std::string& group_spec, const Component& c) {
  const json key = {{"group", normalize_group_spec(group_spec)},
                    {"base", to_string(c.base)},
                    {"equivalence", to_string(c.equivalence)},
                    {"rep", tuple_to_json(c.canonical_rep.group(), c.canonical_rep.entries())}};
  return sha256_hex(key.dump()).substr(0, 16);
}

json component_to_json(const std::string& group_spec, const Component& c,
                       const CentralExtension* extension) {
  const PermGroup& g = c.canonical_rep.group();
  json out = {{"id", component_id(group_spec, c)},
              {"r", c.r},
              {"base", to_string(c.base)},
              {"equivalence", to_string(c.equivalence)},
              {"orbit_size", c.orbit_size},
              {"canonical_rep", tuple_to_json(g, c.canonical_rep.entries())},
              {"group_order", c.group_order},
              {"ici", ici_to_json(g, c.ici)}};
  out["group_class_id"] = c.group_class_id ? json(*c.group_class_id) : json(nullptr);
  if (c.lifting && extension) {
    out["lifting"] = {{"element", extension->cover().element(c.lifting->element).cycles()},
                      {"degree", c.lifting->degree}};
  } else {
    out["lifting"] = nullptr;
  }
  return out;
}

Component component_from_json(const PermGroup& g, const json& j, const OrbitOptions& options) {
  EnumerationSpec spec;
  spec.base = parse_base(j.at("base").get<std::string>());
  spec.equivalence = parse_equivalence(j.at("equivalence").get<std::string>());
  const NielsenTuple t(g, tuple_from_json(g, j.at("canonical_rep")));
  Component c = orbit_of(t, spec, options);
  if (!(c.canonical_rep == t)) {
    throw PreconditionError("component record is not in canonical form");
  }
  if (j.contains("id") && j.at("id").get<std::string>() != component_id(g.name(), c)) {
    throw PreconditionError("component id " + j.at("id").get<std::string>() +
                            " does not match its representative over " + g.name());
  }
  return c;
}

json splitting_to_json(const PermGroup& g, const SplittingDatum& d) {
  json breakdown = json::array();
  for (const ClassSplit& s : d.breakdown) {
    json pieces = json::array();
    for (const auto& piece : s.pieces) pieces.push_back(tuple_to_json(g, piece));
    breakdown.push_back({{"class", g.element(g.classes().representative(s.ambient)).cycles()},
                         {"subgroup_classes", pieces}});
  }
  json classes = json::array();
  for (ClassId c : d.classes) classes.push_back(g.element(g.classes().representative(c)).cycles());
  return {{"subgroup_id", d.subgroup_id ? json(*d.subgroup_id) : json(nullptr)},
          {"subgroup_order", d.subgroup_order},
          {"classes", classes},
          {"omega", d.omega},
          {"breakdown", breakdown}};
}

json twist_to_json(const std::string& group_spec, const TwistReport& r) {
  json twists = json::array();
  for (const Component& c : r.twists) twists.push_back(component_id(group_spec, c));
  return {{"h_order", r.h_order},
          {"k_order", r.k_order},
          {"join_order", r.join_order},
          {"join_is_product", r.join_is_product},
          {"product", component_id(group_spec, r.product)},
          {"twists", twists},
          {"singleton", r.singleton}};
}

json cpfv_to_json(const std::string& group_spec, const CentralExtension& e, const CpfvReport& r) {
  const PermGroup& g = e.base();
  json rows = json::array();
  for (const CpfvRow& row : r.rows) {
    json comps = json::array();
    for (const Component& c : row.components) comps.push_back(component_id(group_spec, c));
    rows.push_back({{"r", row.r},
                    {"group", tuple_to_json(g, row.group)},
                    {"group_order", row.group_order},
                    {"ici", ici_to_json(g, row.ici)},
                    {"lift", e.cover().element(row.lift.element).cycles()},
                    {"components", comps}});
  }
  json collisions = json::object();
  for (const auto& [rr, n] : r.collisions) collisions[std::to_string(rr)] = n;
  return {{"rows", rows},
          {"collisions", collisions},
          {"threshold", r.threshold ? json(*r.threshold) : json(nullptr)},
          {"threshold_note", "observed within range"},
          {"complete", r.complete},
          {"reason", r.reason}};
}

std::string series_to_csv(const CountSeries& s) {
  std::ostringstream out;
  out << "r,count\n";
  for (const auto& [r, n] : s.points) out << r << ',' << n << '\n';
  if (s.truncated) out << "# truncated at r = " << s.truncated_at << ": " << s.reason << '\n';
  if (s.period) {
    out << "# period " << s.period->period << " from r = " << s.period->onset
        << " (observed within range, not proven)\n";
  } else {
    out << "# no period observed within range\n";
  }
  return out.str();
}

CentralExtension extension_from_json(const PermGroup& base, const json& j) {
  try {
    std::vector<std::pair<std::string, std::string>> projection;
    for (const auto& pair : j.at("projection")) {
      projection.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
    std::vector<std::string> classes = j.at("classes").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> lifts;
    if (j.contains("lifts") && !j.at("lifts").is_null()) {
      for (const auto& pair : j.at("lifts")) {
        lifts.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
      }
    }
    return load_central_extension(base, j.at("cover").get<std::string>(), projection, classes, lifts);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed extension file: ") + e.what());
  }
}

ResultCache::ResultCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ResultCache::default_root() {
  if (const char* env = std::getenv("NBL_CACHE"); env && *env) return env;
  return ".nbl-cache";
}

std::filesystem::path ResultCache::path_for(const std::string& digest) const {
  return root_ / digest.substr(0, 2) / (digest + ".json");
}

std::optional<std::string> ResultCache::get(const std::string& digest) const {
  std::ifstream in(path_for(digest), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ResultCache::put(const std::string& digest, const std::string& content) const {
  static std::atomic<unsigned> counter{0};
  const auto target = path_for(digest);
  std::filesystem::create_directories(target.parent_path());
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace nbl
