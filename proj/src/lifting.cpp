#include "nbl/lifting.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <variant>

#include "nbl/errors.hpp"

namespace nbl {

CentralExtension CentralExtension::build(PermGroup base, PermGroup cover,
                                         const std::vector<std::pair<Perm, Perm>>& projection,
                                         std::vector<ClassId> classes,
                                         const std::map<ClassId, Perm>& lifts) {
  CentralExtension e;
  e.base_ = std::move(base);
  e.cover_ = std::move(cover);
  const PermGroup& gb = e.base_;
  const PermGroup& gc = e.cover_;

  std::vector<std::pair<Elem, Elem>> gens;
  for (const auto& [src, img] : projection) {
    auto s = gc.find(src);
    if (!s) throw ExtensionRejected("not-homomorphism", src.cycles() + " is not in the cover");
    auto t = gb.find(img);
    if (!t) throw ExtensionRejected("not-homomorphism", img.cycles() + " is not in the base group");
    gens.emplace_back(*s, *t);
  }

  // Extend along right multiplication; every edge is checked, which is
  // enough for a homomorphism.
  constexpr int kUnset = -1;
  std::vector<int> proj(gc.order(), kUnset);
  proj[PermGroup::identity()] = PermGroup::identity();
  std::vector<Elem> queue{PermGroup::identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (const auto& [s, img] : gens) {
      const Elem y = gc.mul(x, s);
      const int v = gb.mul(static_cast<Elem>(proj[x]), img);
      if (proj[y] == kUnset) {
        proj[y] = v;
        queue.push_back(y);
      } else if (proj[y] != v) {
        throw ExtensionRejected("not-homomorphism", "two images forced for " + gc.element(y).cycles());
      }
    }
  }
  if (queue.size() != gc.order()) {
    throw ExtensionRejected("not-homomorphism", "the listed cover elements do not generate the cover");
  }
  e.projection_.assign(proj.begin(), proj.end());

  std::vector<std::vector<Elem>> fibres(gb.order());
  for (std::size_t x = 0; x < gc.order(); ++x) fibres[e.projection_[x]].push_back(static_cast<Elem>(x));
  for (std::size_t g = 0; g < gb.order(); ++g) {
    if (fibres[g].empty()) {
      throw ExtensionRejected("not-surjective", gb.element(static_cast<Elem>(g)).cycles() + " has no preimage");
    }
  }

  e.kernel_ = fibres[PermGroup::identity()];
  for (Elem k : e.kernel_) {
    for (const Perm& p : gc.generators()) {
      const Elem s = gc.index_of(p);
      if (gc.mul(k, s) != gc.mul(s, k)) {
        throw ExtensionRejected("kernel-not-central", gc.element(k).cycles() +
                                                          " does not commute with " + p.cycles());
      }
    }
  }

  const ClassTable& table = gb.classes();
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (ClassId c : classes) {
    if (c >= table.size()) throw ExtensionRejected("bad-class", "class id " + std::to_string(c));
  }
  for (const auto& [c, p] : lifts) {
    if (!std::binary_search(classes.begin(), classes.end(), c)) {
      throw ExtensionRejected("bad-class", "lift given for a class outside the scope");
    }
  }
  e.classes_ = classes;
  e.lifts_.assign(gb.order(), std::nullopt);

  for (ClassId c : classes) {
    const Elem rho = table.representative(c);
    Elem rho_lift = fibres[rho].front();  // smallest preimage
    if (auto it = lifts.find(c); it != lifts.end()) {
      auto l = gc.find(it->second);
      if (!l || e.projection_[*l] != rho) {
        throw ExtensionRejected("bad-lift", it->second.cycles() + " does not lift " +
                                                gb.element(rho).cycles());
      }
      rho_lift = *l;
    }
    e.rep_lifts_[c] = rho_lift;

    for (std::size_t z = 0; z < gb.order(); ++z) {
      if (gb.conj(rho, static_cast<Elem>(z)) != rho) continue;
      for (Elem zl : fibres[z]) {
        if (gc.mul(zl, rho_lift) != gc.mul(rho_lift, zl)) {
          throw ExtensionRejected("not-c-admissible",
                                  "class of " + gb.element(rho).cycles() + ": lift " +
                                      gc.element(zl).cycles() + " of centralizer element " +
                                      gb.element(static_cast<Elem>(z)).cycles() +
                                      " does not commute with " + gc.element(rho_lift).cycles());
        }
      }
    }

    // Every lift of every conjugator must agree.
    for (std::size_t xl = 0; xl < gc.order(); ++xl) {
      const Elem x = e.projection_[xl];
      const Elem g = gb.conj(rho, x);
      const Elem l = gc.conj(rho_lift, static_cast<Elem>(xl));
      auto& slot = e.lifts_[g];
      if (!slot) {
        slot = l;
      } else if (*slot != l) {
        throw ExtensionRejected("not-c-admissible", "lift of " + gb.element(g).cycles() +
                                                        " depends on the conjugator");
      }
    }
  }
  return e;
}

CentralExtension CentralExtension::identity(PermGroup base, std::vector<ClassId> classes) {
  std::vector<std::pair<Perm, Perm>> projection;
  for (const Perm& p : base.generators()) projection.emplace_back(p, p);
  if (projection.empty()) projection.emplace_back(Perm::identity(base.degree()), Perm::identity(base.degree()));
  PermGroup cover = base;
  return build(std::move(base), std::move(cover), projection, std::move(classes));
}

Elem CentralExtension::representative_lift(ClassId c) const {
  auto it = rep_lifts_.find(c);
  if (it == rep_lifts_.end()) throw PreconditionError("class outside the extension scope");
  return it->second;
}

std::optional<Elem> CentralExtension::lift(Elem g) const {
  if (g >= lifts_.size()) return std::nullopt;
  return lifts_[g];
}

CentralExtension load_central_extension(
    const PermGroup& base, const std::string& cover_spec,
    const std::vector<std::pair<std::string, std::string>>& projection,
    const std::vector<std::string>& classes,
    const std::vector<std::pair<std::string, std::string>>& lifts) {
  PermGroup cover = parse_group_spec(cover_spec);
  std::vector<std::pair<Perm, Perm>> proj;
  for (const auto& [src, img] : projection) {
    proj.emplace_back(Perm::from_cycles(src, cover.degree()), Perm::from_cycles(img, base.degree()));
  }
  const ClassTable& table = base.classes();
  std::vector<ClassId> ids;
  for (const std::string& c : classes) {
    ids.push_back(table.class_of(base.index_of(Perm::from_cycles(c, base.degree()))));
  }
  std::map<ClassId, Perm> chosen;
  for (const auto& [rep, lift] : lifts) {
    const Elem r = base.index_of(Perm::from_cycles(rep, base.degree()));
    const ClassId c = table.class_of(r);
    if (table.representative(c) != r) {
      throw ExtensionRejected("bad-lift", rep + " is not the representative of its class (" +
                                              base.element(table.representative(c)).cycles() + ")");
    }
    chosen.emplace(c, Perm::from_cycles(lift, cover.degree()));
  }
  return CentralExtension::build(base, std::move(cover), proj, std::move(ids), chosen);
}

CentralExtension builtin_a4_extension(std::optional<std::vector<ClassId>> classes) {
  const PermGroup a4 = parse_group_spec("A4");
  std::vector<std::string> reps{"(2 3 4)", "(2 4 3)"};
  if (classes) {
    reps.clear();
    for (ClassId c : *classes) reps.push_back(a4.element(a4.classes().representative(c)).cycles());
  }
  return load_central_extension(a4, "perm(8; (1 6 2 3)(4 7 8 5), (1 4 7)(2 8 5))",
                                {{"(1 6 2 3)(4 7 8 5)", "(1 2)(3 4)"}, {"(1 4 7)(2 8 5)", "(1 3 4)"}},
                                reps);
}

LiftValue lifting_invariant(const NielsenTuple& t, const CentralExtension& e) {
  if (!same_group(t.group(), e.base())) {
    throw PreconditionError("extension-mismatch: tuple is not over the extension's base group");
  }
  Elem value = PermGroup::identity();
  for (Elem g : t.entries()) {
    auto l = e.lift(g);
    if (!l) {
      throw PreconditionError("entry-outside-c: " + t.group().element(g).cycles() +
                              " is not in the extension's classes");
    }
    value = e.cover().mul(value, *l);
  }
  return LiftValue{value, t.size()};
}

CpfvReport cpfv_probe(const PermGroup& g, const CentralExtension& e, const EnumerationSpec& spec,
                      std::size_t r_min, std::size_t r_max, const OrbitOptions& options) {
  if (!same_group(g, e.base())) throw PreconditionError("extension-mismatch");
  if (r_max < r_min) throw PreconditionError("invalid r range");
  EnumerationSpec scoped = spec;
  const std::vector<ClassId>& scope = e.classes();
  if (std::holds_alternative<AnyClass>(spec.classes)) {
    scoped.classes = scope;
  } else if (const auto* ids = std::get_if<std::vector<ClassId>>(&spec.classes)) {
    std::vector<ClassId> both;
    for (ClassId c : *ids) {
      if (std::binary_search(scope.begin(), scope.end(), c)) both.push_back(c);
    }
    scoped.classes = both;
  } else {
    for (const auto& [c, n] : std::get<ICIProfile>(spec.classes).counts) {
      if (!std::binary_search(scope.begin(), scope.end(), c)) {
        throw PreconditionError("profile uses a class outside the extension scope");
      }
    }
  }

  CpfvReport rep;
  for (std::size_t r = r_min; r <= r_max; ++r) {
    Decomposition d = decompose_components(g, r, scoped, options);
    if (!d.complete) {
      rep.complete = false;
      rep.reason = d.phase + ": " + d.reason;
      break;
    }
    std::map<std::tuple<std::vector<Elem>, ICIProfile, LiftValue>, std::vector<Component>> keyed;
    for (Component& c : d.components) {
      const ElementSet h = closure(g, c.canonical_rep.entries());
      c.lifting = lifting_invariant(c.canonical_rep, e);
      keyed[{h.elements(), c.ici, *c.lifting}].push_back(std::move(c));
    }
    std::size_t collisions = 0;
    for (auto& [key, comps] : keyed) {
      if (comps.size() > 1) ++collisions;
      CpfvRow row;
      row.r = r;
      row.group = std::get<0>(key);
      row.group_order = row.group.size();
      row.ici = std::get<1>(key);
      row.lift = std::get<2>(key);
      row.components = std::move(comps);
      rep.rows.push_back(std::move(row));
    }
    rep.collisions[r] = collisions;
  }
  std::optional<std::size_t> threshold;
  for (auto it = rep.collisions.rbegin(); it != rep.collisions.rend(); ++it) {
    if (it->second != 0) break;
    threshold = it->first;
  }
  rep.threshold = threshold;
  return rep;
}

RationalityResult is_globally_rational(const PermGroup& g, const ICIProfile& profile) {
  RationalityResult res;
  const auto exp = static_cast<long long>(g.exponent());
  const auto order = static_cast<long long>(g.order());
  for (long long m = 2; m < exp; ++m) {
    if (std::gcd(m, order) != 1) continue;
    ICIProfile image;
    for (const auto& [c, n] : profile.counts) image.counts[class_power(g, c, m)] += n;
    if (image == profile) continue;
    res.rational = false;
    res.witness_m = m;
    for (const auto& [c, n] : profile.counts) {
      auto it = image.counts.find(c);
      if (it == image.counts.end() || it->second != n) {
        res.moved_class = c;
        break;
      }
    }
    return res;
  }
  return res;
}

}  // namespace nbl
