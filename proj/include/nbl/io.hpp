#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nbl/lifting.hpp"
#include "nbl/monoid.hpp"

namespace nbl {

using json = nlohmann::json;

std::string to_string(Base b);         // "p1" / "a1"
std::string to_string(Equivalence e);  // "marked" / "unmarked"
Base parse_base(std::string_view s);
Equivalence parse_equivalence(std::string_view s);

json tuple_to_json(const PermGroup& g, std::span<const Elem> entries);
std::vector<Elem> tuple_from_json(const PermGroup& g, const json& j);
// {class representative cycles: count}, over g's classes.
json ici_to_json(const PermGroup& g, const ICIProfile& profile);
ICIProfile ici_from_json(const PermGroup& g, const json& j);

// Comma-separated class representatives, "trans" for every 2-cycle class,
// or "all".
ClassConstraint parse_class_list(const PermGroup& g, const std::string& text);
// "(1 2 3)=2, (1 2)=1"
std::map<ClassId, std::size_t> parse_class_counts(const PermGroup& g, const std::string& text);

std::string sha256_hex(std::string_view data);

// First 16 hex digits of the SHA-256 of the canonical JSON of (group spec,
// base, equivalence, canonical representative). Stable across runs.
std::string component_id(const std::string& group_spec, const Component& c);

json component_to_json(const std::string& group_spec, const Component& c,
                       const CentralExtension* extension = nullptr);
// Rebuilds a component from its JSON record by recomputing its orbit, and
// checks the recorded id.
Component component_from_json(const PermGroup& g, const json& j, const OrbitOptions& options = {});

json splitting_to_json(const PermGroup& g, const SplittingDatum& d);
json twist_to_json(const std::string& group_spec, const TwistReport& r);
json cpfv_to_json(const std::string& group_spec, const CentralExtension& e, const CpfvReport& r);

// CSV with header "r,count"; trailing '#' lines note truncation and the
// observed period.
std::string series_to_csv(const CountSeries& s);

// {cover, projection: [[cover gen, image], ...], classes: [rep, ...],
//  lifts: [[rep, lift], ...]}
CentralExtension extension_from_json(const PermGroup& base, const json& j);

// Content-addressed result store: <root>/<2 hex>/<digest>.json. Writes go
// through a temporary file and a rename.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path root);
  // NBL_CACHE, or ".nbl-cache".
  static std::filesystem::path default_root();

  std::filesystem::path path_for(const std::string& digest) const;
  std::optional<std::string> get(const std::string& digest) const;
  void put(const std::string& digest, const std::string& content) const;

 private:
  std::filesystem::path root_;
};

}  // namespace nbl
