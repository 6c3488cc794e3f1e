#include "nbl/braid.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "nbl/errors.hpp"

namespace nbl {

NielsenTuple apply_braid(const NielsenTuple& t, std::size_t i, Direction dir) {
  if (i < 1 || i + 1 > t.size()) {
    throw PreconditionError("braid index " + std::to_string(i) + " outside 1.." +
                            std::to_string(t.size() == 0 ? 0 : t.size() - 1));
  }
  std::vector<Elem> entries = t.entry_vector();
  braid_in_place(t.group(), entries, i - 1, dir);
  return NielsenTuple(t.group(), std::move(entries));
}

namespace {

// Mixed-radix code of a tuple over a sorted alphabet, first entry most
// significant, so numeric order of codes is lexicographic order of tuples.
class Codec {
 public:
  Codec(std::vector<Elem> alphabet, std::size_t order, std::size_t r)
      : alphabet_(std::move(alphabet)), digit_(order, -1), r_(r), weight_(r, 1) {
    for (std::size_t d = 0; d < alphabet_.size(); ++d) digit_[alphabet_[d]] = static_cast<int>(d);
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 63;
    unsigned __int128 space = 1;
    for (std::size_t i = 0; i < r_; ++i) {
      space *= std::max<std::size_t>(alphabet_.size(), 1);
      if (space > limit) {
        dense_ = false;
        return;
      }
    }
    space_ = static_cast<std::uint64_t>(space);
    for (std::size_t i = r_; i-- > 1;) weight_[i - 1] = weight_[i] * alphabet_.size();
  }

  bool dense() const noexcept { return dense_; }
  std::uint64_t space() const noexcept { return space_; }
  std::size_t r() const noexcept { return r_; }

  bool covers(Elem e) const noexcept { return digit_[e] >= 0; }

  std::uint64_t encode(std::span<const Elem> t) const noexcept {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < r_; ++i) code += static_cast<std::uint64_t>(digit_[t[i]]) * weight_[i];
    return code;
  }
  void decode(std::uint64_t code, std::span<Elem> out) const noexcept {
    const std::uint64_t s = alphabet_.size();
    for (std::size_t i = r_; i-- > 0;) {
      out[i] = alphabet_[code % s];
      code /= s;
    }
  }
  std::uint64_t weight(std::size_t i) const noexcept { return weight_[i]; }
  std::uint64_t digit(Elem e) const noexcept { return static_cast<std::uint64_t>(digit_[e]); }

 private:
  std::vector<Elem> alphabet_;
  std::vector<int> digit_;
  std::size_t r_;
  std::vector<std::uint64_t> weight_;
  bool dense_ = true;
  std::uint64_t space_ = 0;
};

// Bitset over the whole code space when it is small enough, hash set
// otherwise.
class DenseVisited {
 public:
  static constexpr std::uint64_t kBitsetLimit = std::uint64_t{1} << 31;

  explicit DenseVisited(std::uint64_t space) {
    if (space <= kBitsetLimit) bits_.assign((space + 63) / 64, 0);
    use_bits_ = space <= kBitsetLimit;
  }
  bool contains(std::uint64_t k) const {
    if (use_bits_) return (bits_[k >> 6] >> (k & 63)) & 1U;
    return set_.count(k) != 0;
  }
  bool insert(std::uint64_t k) {
    if (use_bits_) {
      auto& w = bits_[k >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (k & 63);
      if (w & bit) return false;
      w |= bit;
      return true;
    }
    return set_.insert(k).second;
  }

 private:
  bool use_bits_ = true;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> set_;
};

struct DenseKeys {
  using Key = std::uint64_t;
  const PermGroup& g;
  const Codec& codec;
  DenseVisited& visited;
  bool unmarked;

  Key key(std::span<const Elem> t) const { return codec.encode(t); }
  void load(Key k, std::span<Elem> out) const { codec.decode(k, out); }
  bool contains(Key k) const { return visited.contains(k); }
  bool insert(Key k) { return visited.insert(k); }

  // Appends the 2(r-1) neighbours of state k. `buf` and `tmp` are scratch
  // of length r.
  void neighbours(Key k, std::vector<Key>& out, std::vector<Elem>& buf,
                  std::vector<Elem>& tmp) const {
    const std::size_t r = codec.r();
    codec.decode(k, buf);
    std::vector<Elem> canon(unmarked ? r : 0);
    for (std::size_t pos = 0; pos + 1 < r; ++pos) {
      for (Direction dir : {Direction::Forward, Direction::Inverse}) {
        const Elem a = buf[pos];
        const Elem b = buf[pos + 1];
        Elem na, nb;
        if (dir == Direction::Forward) {
          na = g.conj(b, a);
          nb = a;
        } else {
          na = b;
          nb = g.conj(a, g.inv(b));
        }
        if (!unmarked) {
          // Only two digits change.
          out.push_back(k - codec.digit(a) * codec.weight(pos) -
                        codec.digit(b) * codec.weight(pos + 1) +
                        codec.digit(na) * codec.weight(pos) +
                        codec.digit(nb) * codec.weight(pos + 1));
        } else {
          tmp = buf;
          tmp[pos] = na;
          tmp[pos + 1] = nb;
          canonical_form(g, tmp, canon);
          out.push_back(codec.encode(canon));
        }
      }
    }
  }
};

struct WideKeys {
  using Key = std::u16string;
  const PermGroup& g;
  std::unordered_set<Key>& visited;
  bool unmarked;

  Key key(std::span<const Elem> t) const { return Key(t.begin(), t.end()); }
  void load(const Key& k, std::span<Elem> out) const { std::copy(k.begin(), k.end(), out.begin()); }
  bool contains(const Key& k) const { return visited.count(k) != 0; }
  bool insert(const Key& k) { return visited.insert(k).second; }

  void neighbours(const Key& k, std::vector<Key>& out, std::vector<Elem>& buf,
                  std::vector<Elem>& tmp) const {
    const std::size_t r = k.size();
    load(k, buf);
    std::vector<Elem> canon(r);
    for (std::size_t pos = 0; pos + 1 < r; ++pos) {
      for (Direction dir : {Direction::Forward, Direction::Inverse}) {
        tmp = buf;
        braid_in_place(g, tmp, pos, dir);
        if (unmarked) {
          canonical_form(g, tmp, canon);
          out.push_back(key(canon));
        } else {
          out.push_back(key(tmp));
        }
      }
    }
  }
};

// Re-derives product, class profile and generated subgroup of each visited
// state and compares with the seed.
class InvariantChecker {
 public:
  InvariantChecker(const PermGroup& g, std::span<const Elem> seed)
      : g_(g), lattice_(g), product_(g.product(seed)), profile_(ici(g, seed)),
        group_(lattice_.generated(seed)) {}

  void check(std::span<const Elem> t, bool unmarked) {
    if (ici(g_, t) != profile_) throw Error("braid orbit changed the inertia profile");
    const SubgroupId h = lattice_.generated(t);
    if (!unmarked) {
      if (g_.product(t) != product_) throw Error("braid orbit changed the tuple product");
      if (h != group_) throw Error("braid orbit changed the generated subgroup");
    } else if (lattice_.order(h) != lattice_.order(group_)) {
      throw Error("braid orbit changed the generated subgroup order");
    }
  }

 private:
  const PermGroup& g_;
  SubgroupLattice lattice_;
  Elem product_;
  ICIProfile profile_;
  SubgroupId group_;
};

template <class Keys>
struct OrbitRun {
  typename Keys::Key min;
  std::uint64_t size = 0;
};

// Level-synchronous BFS. Neighbour generation is split across threads;
// merging into the visited set happens sequentially in frontier order, so
// results do not depend on the thread count.
template <class Keys>
OrbitRun<Keys> run_orbit(const PermGroup& g, Keys& keys, std::span<const Elem> seed,
                         const OrbitOptions& options, const Deadline& deadline,
                         std::vector<typename Keys::Key>* members) {
  using Key = typename Keys::Key;
  const std::size_t r = seed.size();
  std::optional<InvariantChecker> checker;
  if (options.check_invariants) checker.emplace(g, seed);

  OrbitRun<Keys> run{keys.key(seed), 0};
  keys.insert(run.min);
  run.size = 1;
  if (members) members->push_back(run.min);

  std::vector<Key> frontier{run.min};
  std::vector<Key> next;
  const unsigned threads = std::max(1U, options.threads);
  std::vector<std::vector<Key>> produced(threads);
  std::vector<Elem> scratch(r);

  auto accept = [&](const Key& k) {
    if (!keys.insert(k)) return;
    if (++run.size > options.budget.max_orbit) {
      throw BudgetExceeded("orbit", "orbit larger than " + std::to_string(options.budget.max_orbit),
                           run.size);
    }
    if (k < run.min) run.min = k;
    if (checker) {
      keys.load(k, scratch);
      checker->check(scratch, keys.unmarked);
    }
    if (members) members->push_back(k);
    next.push_back(k);
  };

  while (!frontier.empty()) {
    if (deadline.expired()) {
      throw BudgetExceeded("orbit", "time budget of " + std::to_string(options.budget.timeout.count()) +
                                        " s reached",
                           run.size);
    }
    next.clear();
    if (threads > 1 && frontier.size() >= 2048) {
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          std::vector<Elem> buf(r), tmp(r);
          auto& out = produced[t];
          out.clear();
          const std::size_t lo = std::min(frontier.size(), t * chunk);
          const std::size_t hi = std::min(frontier.size(), lo + chunk);
          for (std::size_t i = lo; i < hi; ++i) keys.neighbours(frontier[i], out, buf, tmp);
        });
      }
      for (auto& th : pool) th.join();
      for (auto& out : produced) {
        for (const Key& k : out) accept(k);
      }
    } else {
      std::vector<Elem> buf(r), tmp(r);
      auto& out = produced[0];
      for (const Key& state : frontier) {
        out.clear();
        keys.neighbours(state, out, buf, tmp);
        for (const Key& k : out) accept(k);
      }
    }
    frontier.swap(next);
  }
  return run;
}

Component make_component(const PermGroup& g, std::vector<Elem> rep, std::uint64_t size,
                         const EnumerationSpec& spec, const OrbitOptions& options) {
  Component c;
  c.r = rep.size();
  c.orbit_size = size;
  c.base = spec.base;
  c.equivalence = spec.equivalence;
  c.ici = ici(g, rep);
  const ElementSet h = closure(g, rep);
  c.group_order = h.size();
  if (options.classify_groups && g.order() <= kDefaultSubgroupCap) {
    c.group_class_id = g.subgroup_catalog().class_of(h);
  }
  c.canonical_rep = NielsenTuple(g, std::move(rep));
  return c;
}

// Runs `body` with a key policy suited to the alphabet and tuple length.
template <class Body>
auto with_keys(const PermGroup& g, std::vector<Elem> alphabet, std::size_t r, bool unmarked,
               Body&& body) {
  Codec codec(std::move(alphabet), g.order(), r);
  if (codec.dense()) {
    DenseVisited visited(codec.space());
    DenseKeys keys{g, codec, visited, unmarked};
    return body(keys);
  }
  std::unordered_set<std::u16string> visited;
  WideKeys keys{g, visited, unmarked};
  return body(keys);
}

std::vector<Elem> classes_alphabet(const PermGroup& g, std::span<const Elem> entries) {
  std::vector<ClassId> ids;
  for (Elem e : entries) ids.push_back(g.classes().class_of(e));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return allowed_elements(g, ClassConstraint{ids});
}

void check_orbit_seed(const NielsenTuple& t, const EnumerationSpec& spec) {
  if (spec.base == Base::Projective && t.product() != PermGroup::identity()) {
    throw PreconditionError("projective tuples must have product 1");
  }
  const std::vector<Elem> allowed = allowed_elements(t.group(), spec.classes);
  for (Elem e : t.entries()) {
    if (!std::binary_search(allowed.begin(), allowed.end(), e)) {
      throw PreconditionError("tuple entry " + t.group().element(e).cycles() +
                              " violates the class constraint");
    }
  }
}

std::vector<Elem> seed_entries(const NielsenTuple& t, Equivalence eq) {
  std::vector<Elem> seed = t.entry_vector();
  if (eq == Equivalence::Unmarked) canonical_form(t.group(), t.entries(), seed);
  return seed;
}

}  // namespace

Component orbit_of(const NielsenTuple& t, const EnumerationSpec& spec, const OrbitOptions& options) {
  check_orbit_seed(t, spec);
  const PermGroup& g = t.group();
  const bool unmarked = spec.equivalence == Equivalence::Unmarked;
  const std::vector<Elem> seed = seed_entries(t, spec.equivalence);
  const Deadline deadline(options.budget.timeout);
  return with_keys(g, classes_alphabet(g, seed), seed.size(), unmarked, [&](auto& keys) {
    auto run = run_orbit(g, keys, seed, options, deadline, nullptr);
    std::vector<Elem> rep(seed.size());
    keys.load(run.min, rep);
    return make_component(g, std::move(rep), run.size, spec, options);
  });
}

OrbitResult orbit_members(const NielsenTuple& t, const EnumerationSpec& spec,
                          const OrbitOptions& options) {
  check_orbit_seed(t, spec);
  const PermGroup& g = t.group();
  const bool unmarked = spec.equivalence == Equivalence::Unmarked;
  const std::vector<Elem> seed = seed_entries(t, spec.equivalence);
  const Deadline deadline(options.budget.timeout);
  return with_keys(g, classes_alphabet(g, seed), seed.size(), unmarked, [&](auto& keys) {
    using Key = typename std::decay_t<decltype(keys)>::Key;
    std::vector<Key> members;
    auto run = run_orbit(g, keys, seed, options, deadline, &members);
    std::sort(members.begin(), members.end());
    OrbitResult out;
    out.members.reserve(members.size());
    std::vector<Elem> buf(seed.size());
    for (const Key& k : members) {
      keys.load(k, buf);
      out.members.push_back(buf);
    }
    out.component = make_component(g, out.members.front(), run.size, spec, options);
    return out;
  });
}

std::vector<NielsenTuple> orbit_elements(const NielsenTuple& t, const EnumerationSpec& spec,
                                         const OrbitOptions& options) {
  OrbitResult res = orbit_members(t, spec, options);
  std::vector<NielsenTuple> out;
  out.reserve(res.members.size());
  for (auto& m : res.members) out.emplace_back(t.group(), std::move(m));
  return out;
}

namespace {

// Shared driver for decompose_components and ComponentAtlas::build. `on_orbit`
// receives each finished component with its member keys (when requested).
template <class OnOrbit>
Decomposition decompose_impl(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                             const OrbitOptions& options, bool want_members, OnOrbit&& on_orbit) {
  const bool unmarked = spec.equivalence == Equivalence::Unmarked;
  const Deadline deadline(options.budget.timeout);
  return with_keys(g, allowed_elements(g, spec.classes), r, unmarked, [&](auto& keys) {
    using Key = typename std::decay_t<decltype(keys)>::Key;
    Decomposition out;
    std::vector<Key> members;
    std::vector<Elem> buf(r);
    try {
      const auto stats = enumerate_nielsen(
          g, r, spec,
          [&](std::span<const Elem> t) {
            ++out.tuples;
            const Key k = keys.key(t);
            if (keys.contains(k)) return;
            members.clear();
            auto run = run_orbit(g, keys, t, options, deadline, want_members ? &members : nullptr);
            if (run.min != k) {
              throw Error("orbit seed is not the orbit minimum; enumeration and braid action disagree");
            }
            out.components.push_back(make_component(
                g, std::vector<Elem>(t.begin(), t.end()), run.size, spec, options));
            if (want_members) {
              std::vector<std::vector<Elem>> tuples;
              tuples.reserve(members.size());
              for (const Key& m : members) {
                keys.load(m, buf);
                tuples.push_back(buf);
              }
              on_orbit(out.components.back(), std::move(tuples));
            }
          },
          options.budget);
      if (!stats.complete) {
        out.complete = false;
        out.phase = "enumeration";
        out.reason = stats.stop_reason;
      }
    } catch (const BudgetExceeded& e) {
      out.complete = false;
      out.phase = e.phase();
      out.reason = e.what();
    }
    if (out.complete) {
      std::uint64_t total = 0;
      for (const Component& c : out.components) total += c.orbit_size;
      if (total != out.tuples) {
        throw Error("orbit sizes sum to " + std::to_string(total) + " but " +
                    std::to_string(out.tuples) + " tuples were enumerated");
      }
    }
    return out;
  });
}

}  // namespace

Decomposition decompose_components(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                                   const OrbitOptions& options) {
  return decompose_impl(g, r, spec, options, false, [](const Component&, auto&&) {});
}

ComponentAtlas ComponentAtlas::build(const PermGroup& g, std::size_t r,
                                     const EnumerationSpec& spec, const OrbitOptions& options) {
  ComponentAtlas atlas;
  atlas.g_ = g;
  atlas.equivalence_ = spec.equivalence;
  std::size_t index = 0;
  Decomposition d = decompose_impl(
      g, r, spec, options, true, [&](const Component&, std::vector<std::vector<Elem>> tuples) {
        for (auto& t : tuples) atlas.labels_.emplace(std::move(t), index);
        ++index;
      });
  if (!d.complete) throw BudgetExceeded(d.phase, d.reason, d.tuples);
  atlas.components_ = std::move(d.components);
  return atlas;
}

std::optional<std::size_t> ComponentAtlas::component_of(std::span<const Elem> entries) const {
  std::vector<Elem> key(entries.begin(), entries.end());
  if (equivalence_ == Equivalence::Unmarked) canonical_form(g_, entries, key);
  auto it = labels_.find(key);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::optional<PeriodInfo> detect_period(const std::map<long long, std::uint64_t>& points) {
  std::vector<long long> rs;
  std::vector<std::uint64_t> vs;
  for (const auto& [r, v] : points) {
    if (!rs.empty() && r != rs.back() + 1) {
      throw PreconditionError("series points must be consecutive in r");
    }
    rs.push_back(r);
    vs.push_back(v);
  }
  const std::size_t n = vs.size();
  for (std::size_t u = 1; 2 * u < n; ++u) {
    for (std::size_t j = 0; j < n; ++j) {
      if (n - 1 - j < 2 * u) break;
      bool periodic = true;
      for (std::size_t i = j; i + u < n; ++i) {
        if (vs[i] != vs[i + u]) {
          periodic = false;
          break;
        }
      }
      if (periodic) return PeriodInfo{u, rs[j]};
    }
  }
  return std::nullopt;
}

CountSeries count_series(const PermGroup& g, const EnumerationSpec& spec, long long r_min,
                         long long r_max, const OrbitOptions& options) {
  if (r_min < 0 || r_max < r_min) throw PreconditionError("invalid r range");
  CountSeries series;
  series.group = g.name();
  series.spec = spec;
  for (long long r = r_min; r <= r_max; ++r) {
    Decomposition d = decompose_components(g, static_cast<std::size_t>(r), spec, options);
    if (!d.complete) {
      series.truncated = true;
      series.truncated_at = r;
      series.reason = d.phase + ": " + d.reason;
      break;
    }
    series.points[r] = d.components.size();
  }
  series.period = detect_period(series.points);
  return series;
}

}  // namespace nbl
