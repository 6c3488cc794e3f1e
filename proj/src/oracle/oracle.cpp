#include "nbl/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace oracle {

std::size_t Group::index(const Perm& p) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), p);
  if (it == elems.end() || *it != p) throw std::invalid_argument("oracle: element not in group");
  return static_cast<std::size_t>(it - elems.begin());
}

Group make_group(std::size_t degree, const std::vector<Perm>& gens) {
  Group g;
  g.degree = degree;
  std::set<Perm> seen{Perm::identity(degree)};
  std::vector<Perm> todo{Perm::identity(degree)};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const Perm& s : gens) {
      Perm y = x * s;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  g.elems.assign(seen.begin(), seen.end());
  const std::size_t n = g.order();
  g.table.assign(n, std::vector<std::size_t>(n));
  g.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.table[a][b] = g.index(g.elems[a] * g.elems[b]);
    g.inverse[a] = g.index(g.elems[a].inverse());
  }
  g.class_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (g.class_of[a] != n) continue;
    std::set<std::size_t> cls;
    for (std::size_t x = 0; x < n; ++x) cls.insert(g.conj(a, x));
    for (std::size_t m : cls) g.class_of[m] = g.classes.size();
    g.classes.emplace_back(cls.begin(), cls.end());
  }
  return g;
}

std::vector<std::size_t> generated(const Group& g, const Tuple& gens) {
  std::set<std::size_t> members{0};
  std::vector<std::size_t> todo{0};
  while (!todo.empty()) {
    const std::size_t x = todo.back();
    todo.pop_back();
    for (std::size_t s : gens) {
      const std::size_t y = g.mul(x, s);
      if (members.insert(y).second) todo.push_back(y);
    }
  }
  return {members.begin(), members.end()};
}

namespace {

bool transitive(const Group& g, const Tuple& t) {
  std::vector<bool> reached(g.degree, false);
  std::vector<nbl::Point> todo{0};
  reached[0] = true;
  while (!todo.empty()) {
    const nbl::Point p = todo.back();
    todo.pop_back();
    for (std::size_t e : t) {
      const nbl::Point q = g.elems[e][p];
      if (!reached[q]) {
        reached[q] = true;
        todo.push_back(q);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

Tuple conjugate(const Group& g, const Tuple& t, std::size_t x) {
  Tuple out;
  for (std::size_t e : t) out.push_back(g.conj(e, x));
  return out;
}

Tuple canonical(const Group& g, const Tuple& t) {
  Tuple best = t;
  for (std::size_t x = 0; x < g.order(); ++x) best = std::min(best, conjugate(g, t, x));
  return best;
}

std::vector<std::size_t> conjugate_set(const Group& g, const std::vector<std::size_t>& h,
                                       std::size_t x) {
  std::vector<std::size_t> out;
  for (std::size_t e : h) out.push_back(g.conj(e, x));
  std::sort(out.begin(), out.end());
  return out;
}

bool passes(const Group& g, const Tuple& t, const Filter& f) {
  for (std::size_t e : t) {
    if (e == 0) return false;
  }
  if (f.projective) {
    std::size_t p = 0;
    for (std::size_t e : t) p = g.mul(p, e);
    if (p != 0) return false;
  }
  if (f.classes) {
    for (std::size_t e : t) {
      if (std::find(f.classes->begin(), f.classes->end(), g.class_of[e]) == f.classes->end()) return false;
    }
  }
  if (f.profile) {
    std::map<std::size_t, std::size_t> prof;
    for (std::size_t e : t) ++prof[g.class_of[e]];
    for (const auto& [c, n] : *f.profile) {
      auto it = prof.find(c);
      if ((it == prof.end() ? 0 : it->second) != n) return false;
    }
    for (const auto& [c, n] : prof) {
      if (!f.profile->count(c)) return false;
    }
  }
  if (f.cover == Filter::Cover::Galois) {
    std::vector<std::size_t> want = f.subgroup;
    if (want.empty()) {
      want.resize(g.order());
      std::iota(want.begin(), want.end(), 0);
    }
    const auto got = generated(g, t);
    bool ok = got == want;
    if (!ok && f.unmarked) {
      for (std::size_t x = 0; x < g.order() && !ok; ++x) ok = conjugate_set(g, want, x) == got;
    }
    if (!ok) return false;
  }
  if (f.cover == Filter::Cover::Transitive && !transitive(g, t)) return false;
  if (f.unmarked && canonical(g, t) != t) return false;
  return true;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

}  // namespace

std::vector<Tuple> naive_nielsen(const Group& g, std::size_t r, const Filter& f) {
  std::vector<Tuple> out;
  Tuple t(r, 0);
  while (true) {
    if (passes(g, t, f)) out.push_back(t);
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++t[i] < g.order()) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (r == 0) return out;
  }
}

std::vector<std::size_t> union_find_labels(const Group& g, const std::vector<Tuple>& tuples,
                                           bool unmarked) {
  std::map<Tuple, std::size_t> where;
  for (std::size_t i = 0; i < tuples.size(); ++i) where.emplace(tuples[i], i);
  UnionFind uf(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const Tuple& t = tuples[i];
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      // Q_k: (a, b) -> (a b a^-1, a)
      Tuple u = t;
      const std::size_t a = t[k], b = t[k + 1];
      u[k] = g.mul(g.mul(a, b), g.inverse[a]);
      u[k + 1] = a;
      if (unmarked) u = canonical(g, u);
      auto it = where.find(u);
      if (it == where.end()) throw std::logic_error("oracle: braid move left the tuple set");
      uf.unite(i, it->second);
    }
  }
  std::vector<std::size_t> labels(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) labels[i] = uf.find(i);
  return labels;
}

std::vector<Tuple> alphabet_tuples(const std::vector<std::size_t>& alphabet, std::size_t r) {
  std::vector<Tuple> out;
  if (alphabet.empty() && r > 0) return out;
  std::vector<std::size_t> d(r, 0);
  while (true) {
    Tuple t(r);
    for (std::size_t i = 0; i < r; ++i) t[i] = alphabet[d[i]];
    out.push_back(std::move(t));
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++d[i] < alphabet.size()) break;
      d[i] = 0;
      if (i == 0) return out;
    }
    if (r == 0) return out;
  }
}

std::vector<Tuple> filter_tuples(const Group& g, const std::vector<Tuple>& candidates,
                                 const Filter& f) {
  std::vector<Tuple> out;
  for (const Tuple& t : candidates) {
    if (passes(g, t, f)) out.push_back(t);
  }
  return out;
}

std::size_t block_count(const std::vector<std::size_t>& labels) {
  return std::set<std::size_t>(labels.begin(), labels.end()).size();
}

std::uint64_t dense_component_count(const Group& g, const std::vector<std::size_t>& alphabet,
                                    std::size_t r) {
  if (g.order() > 64) throw std::invalid_argument("oracle: group too large for bitmask subgroups");
  if (r < 2) throw std::invalid_argument("oracle: r must be at least 2");
  const std::size_t s = alphabet.size();
  const std::size_t n = r - 1;  // free prefix; the last entry is forced
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= s;
    if (total > 0xFFFFFFF0ULL) throw std::invalid_argument("oracle: state space too large");
  }
  std::vector<int> digit(g.order(), -1);
  for (std::size_t d = 0; d < s; ++d) digit[alphabet[d]] = static_cast<int>(d);
  std::vector<std::uint64_t> weight(n, 1);
  for (std::size_t i = n; i-- > 1;) weight[i - 1] = weight[i] * s;

  // subgroups as bitmasks, interned, with a memoized join table
  std::vector<std::uint64_t> masks{1};
  std::unordered_map<std::uint64_t, std::size_t> mask_id{{1, 0}};
  std::vector<std::vector<int>> joins{std::vector<int>(g.order(), -1)};
  auto join = [&](std::size_t id, std::size_t e) -> std::size_t {
    if (joins[id][e] >= 0) return static_cast<std::size_t>(joins[id][e]);
    std::uint64_t m = masks[id] | (std::uint64_t{1} << e);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t a = 0; a < g.order(); ++a) {
        if (!((m >> a) & 1U)) continue;
        for (std::size_t b = 0; b < g.order(); ++b) {
          if (!((m >> b) & 1U)) continue;
          const std::size_t c = g.mul(a, b);
          if (!((m >> c) & 1U)) {
            m |= std::uint64_t{1} << c;
            grew = true;
          }
        }
      }
    }
    auto [it, fresh] = mask_id.emplace(m, masks.size());
    if (fresh) {
      masks.push_back(m);
      joins.emplace_back(g.order(), -1);
    }
    joins[id][e] = static_cast<int>(it->second);
    return it->second;
  };
  const std::uint64_t full =
      g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;

  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0U);
  std::vector<bool> good(total, false);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::size_t> d(n, 0);
  std::vector<std::size_t> prod(n + 1, 0), sub(n + 1, 0);
  std::vector<std::size_t> t(r);
  std::size_t dirty = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t i = dirty; i < n; ++i) {
      const std::size_t e = alphabet[d[i]];
      prod[i + 1] = g.mul(prod[i], e);
      sub[i + 1] = join(sub[i], e);
    }
    const std::size_t last = g.inverse[prod[n]];
    if (digit[last] >= 0 && masks[join(sub[n], last)] == full) {
      good[code] = true;
      for (std::size_t i = 0; i < n; ++i) t[i] = alphabet[d[i]];
      t[n] = last;
      for (std::size_t k = 0; k + 1 < r; ++k) {
        const std::size_t a = t[k], b = t[k + 1];
        const std::size_t na = g.mul(g.mul(a, b), g.inverse[a]);
        std::uint64_t other = code - d[k] * weight[k] + static_cast<std::uint64_t>(digit[na]) * weight[k];
        if (k + 1 < n) {
          other = other - d[k + 1] * weight[k + 1] + static_cast<std::uint64_t>(digit[a]) * weight[k + 1];
        }
        const std::uint32_t x = find(static_cast<std::uint32_t>(code));
        const std::uint32_t y = find(static_cast<std::uint32_t>(other));
        if (x < y) {
          parent[y] = x;
        } else if (y < x) {
          parent[x] = y;
        }
      }
    }
    // odometer
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++d[i] < s) break;
      d[i] = 0;
    }
    dirty = i;
  }
  std::uint64_t roots = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (good[code] && parent[code] == code) ++roots;
  }
  return roots;
}

std::uint64_t a3_orbit_count(std::size_t r) {
  std::uint64_t n = 0;
  for (std::size_t a = 0; a <= r; ++a) {
    if (a % 3 == (2 * r) % 3) ++n;
  }
  return n;
}

}  // namespace oracle
