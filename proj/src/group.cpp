#include "nbl/group.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "nbl/errors.hpp"
#include "nbl/subgroups.hpp"

namespace nbl {

namespace {

// Above this order the product is computed on permutations instead of read
// from a table (a 4096^2 table of 16-bit entries is 32 MiB).
constexpr std::size_t kMulTableMaxOrder = 4096;

struct ImagesHash {
  std::size_t operator()(const std::vector<Point>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Point p : v) {
      h ^= p;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

namespace detail {

struct GroupData {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // sorted
  std::vector<Elem> mul_table;
  std::vector<Elem> inverse;
  std::vector<std::uint32_t> orders;
  std::size_t exponent = 1;
  ClassTable classes;
  mutable std::once_flag catalog_once;
  mutable std::unique_ptr<SubgroupCatalog> catalog;

  std::size_t order() const { return elements.size(); }

  std::optional<Elem> find(const Perm& p) const {
    if (p.degree() != degree) return std::nullopt;
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || *it != p) return std::nullopt;
    return static_cast<Elem>(it - elements.begin());
  }

  Elem mul(Elem a, Elem b) const {
    if (!mul_table.empty()) return mul_table[static_cast<std::size_t>(a) * order() + b];
    return *find(elements[a].then(elements[b]));
  }
};

}  // namespace detail

ClassTable::ClassTable(std::vector<ConjugacyClass> classes, std::vector<ClassId> index)
    : classes_(std::move(classes)), index_(std::move(index)) {}

PermGroup PermGroup::generate(std::size_t degree, std::vector<Perm> generators,
                              std::string name, std::size_t order_cap) {
  if (order_cap > kMaxOrderCap) {
    throw CapExceeded("order cap " + std::to_string(order_cap) + " exceeds the supported maximum " +
                      std::to_string(kMaxOrderCap));
  }
  for (const Perm& g : generators) {
    if (g.degree() != degree) {
      throw DegenerateInput("generator " + g.cycles() + " has degree " +
                            std::to_string(g.degree()) + ", expected " + std::to_string(degree));
    }
  }

  auto data = std::make_shared<detail::GroupData>();
  data->name = std::move(name);
  data->degree = degree;
  data->generators = generators;

  // Closure: breadth-first over right multiplication by the generators.
  std::unordered_set<std::vector<Point>, ImagesHash> seen;
  std::vector<Perm> queue{Perm::identity(degree)};
  seen.emplace(queue.front().images().begin(), queue.front().images().end());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Perm& g : generators) {
      Perm next = queue[head].then(g);
      std::vector<Point> key(next.images().begin(), next.images().end());
      if (seen.insert(std::move(key)).second) {
        if (queue.size() >= order_cap) {
          throw CapExceeded("group " + data->name + " has order above the cap " +
                            std::to_string(order_cap));
        }
        queue.push_back(std::move(next));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  data->elements = std::move(queue);
  const std::size_t n = data->order();

  if (n <= kMulTableMaxOrder) {
    data->mul_table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        data->mul_table[a * n + b] = *data->find(data->elements[a].then(data->elements[b]));
      }
    }
  }
  data->inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    data->inverse[a] = *data->find(data->elements[a].inverse());
  }
  data->orders.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = data->mul(x, static_cast<Elem>(a));
      ++k;
    }
    data->orders[a] = k;
    data->exponent = std::lcm(data->exponent, static_cast<std::size_t>(k));
  }

  std::vector<Elem> gen_index;
  for (const Perm& g : generators) gen_index.push_back(*data->find(g));
  constexpr ClassId kUnset = ~ClassId{0};
  std::vector<ClassId> index(n, kUnset);
  std::vector<ConjugacyClass> classes;
  for (std::size_t e = 0; e < n; ++e) {
    if (index[e] != kUnset) continue;
    const auto id = static_cast<ClassId>(classes.size());
    ConjugacyClass cls{static_cast<Elem>(e), {static_cast<Elem>(e)}};
    index[e] = id;
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      for (Elem s : gen_index) {
        Elem x = cls.members[head];
        Elem y = data->mul(data->mul(s, x), data->inverse[s]);
        if (index[y] == kUnset) {
          index[y] = id;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    classes.push_back(std::move(cls));
  }
  data->classes = ClassTable(std::move(classes), std::move(index));

  PermGroup g;
  g.data_ = std::move(data);
  return g;
}

std::size_t PermGroup::order() const noexcept { return data_->order(); }
std::size_t PermGroup::degree() const noexcept { return data_->degree; }
const std::string& PermGroup::name() const noexcept { return data_->name; }
const std::vector<Perm>& PermGroup::generators() const noexcept { return data_->generators; }
const Perm& PermGroup::element(Elem e) const { return data_->elements.at(e); }
std::optional<Elem> PermGroup::find(const Perm& p) const { return data_->find(p); }

Elem PermGroup::index_of(const Perm& p) const {
  auto e = data_->find(p);
  if (!e) throw ForeignElement(p.cycles() + " is not an element of " + data_->name);
  return *e;
}

Elem PermGroup::mul(Elem a, Elem b) const noexcept { return data_->mul(a, b); }
Elem PermGroup::inv(Elem a) const noexcept { return data_->inverse[a]; }
std::size_t PermGroup::element_order(Elem a) const noexcept { return data_->orders[a]; }
std::size_t PermGroup::exponent() const noexcept { return data_->exponent; }
const ClassTable& PermGroup::classes() const noexcept { return data_->classes; }

Elem PermGroup::pow(Elem a, long long m) const {
  const auto ord = static_cast<long long>(element_order(a));
  long long k = ((m % ord) + ord) % ord;
  Elem result = identity();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem PermGroup::product(std::span<const Elem> entries) const noexcept {
  Elem p = identity();
  for (Elem e : entries) p = mul(p, e);
  return p;
}

PermGroup PermGroup::borrowed() const {
  PermGroup g;
  g.data_ = std::shared_ptr<const detail::GroupData>(std::shared_ptr<void>(), data_.get());
  return g;
}

const SubgroupCatalog& PermGroup::subgroup_catalog() const {
  std::call_once(data_->catalog_once,
                 [this] { data_->catalog = std::make_unique<SubgroupCatalog>(borrowed()); });
  return *data_->catalog;
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  if (a.same_as(b)) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.degree() != b.degree() || a.order() != b.order()) return false;
  for (const Perm& p : b.generators()) {
    if (!a.contains(p)) return false;
  }
  return true;
}

const ClassTable& conjugacy_classes(const PermGroup& g) { return g.classes(); }

ClassId class_power(const PermGroup& g, ClassId c, long long m) {
  const ClassTable& table = g.classes();
  const ConjugacyClass& cls = table[c];
  const ClassId result = table.class_of(g.pow(cls.representative, m));
  if (cls.members.size() >= 2) {
    const ClassId check = table.class_of(g.pow(cls.members.back(), m));
    if (check != result) {
      throw Error("class powering is not well defined on class " + std::to_string(c));
    }
  }
  return result;
}

}  // namespace nbl
