#include <cctype>
#include <charconv>
#include <numeric>

#include "nbl/errors.hpp"
#include "nbl/group.hpp"

namespace nbl {

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ParseError("expected a positive integer for " + std::string(what) + ", got \"" +
                     std::string(text) + "\"");
  }
  return value;
}

Perm cycle_perm(std::size_t degree, std::size_t first, std::size_t last) {
  // the cycle (first first+1 ... last), 0-based inclusive bounds
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = first; i < last; ++i) images[i] = static_cast<Point>(i + 1);
  images[last] = static_cast<Point>(first);
  return Perm(std::move(images));
}

PermGroup symmetric(std::size_t n, const std::string& name, std::size_t cap) {
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(cycle_perm(n, 0, n - 1));
    gens.push_back(cycle_perm(n, 0, 1));
  }
  return PermGroup::generate(n, std::move(gens), name, cap);
}

PermGroup alternating(std::size_t n, const std::string& name, std::size_t cap) {
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    images[0] = 1;
    images[1] = static_cast<Point>(k);
    images[k] = 0;
    gens.emplace_back(std::move(images));
  }
  return PermGroup::generate(n, std::move(gens), name, cap);
}

PermGroup cyclic(std::size_t n, const std::string& name, std::size_t cap) {
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(cycle_perm(n, 0, n - 1));
  return PermGroup::generate(n, std::move(gens), name, cap);
}

// Order 2n: rotation i -> i+1 and the reflection i -> -i (mod n) fixing
// the first point.
PermGroup dihedral(std::size_t n, const std::string& name, std::size_t cap) {
  if (n < 3) throw DegenerateInput("D<n> needs n >= 3 to act faithfully on n points");
  std::vector<Point> reflection(n);
  for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
  return PermGroup::generate(n, {cycle_perm(n, 0, n - 1), Perm(std::move(reflection))}, name,
                             cap);
}

// (C_{n1} x ... x C_{nk}) semidirect Z/2 acting by inversion, in its
// regular action on the abelian part. Points are mixed-radix vectors with
// the first factor least significant.
PermGroup generalized_dihedral(const std::vector<std::size_t>& factors, const std::string& name,
                               std::size_t cap) {
  std::size_t size = 1;
  for (std::size_t f : factors) {
    if (f == 0) throw DegenerateInput("GDih factors must be positive");
    size *= f;
    if (size > cap) throw CapExceeded("GDih abelian part exceeds the order cap");
  }
  auto decode = [&](std::size_t x) {
    std::vector<std::size_t> v(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
      v[j] = x % factors[j];
      x /= factors[j];
    }
    return v;
  };
  auto encode = [&](const std::vector<std::size_t>& v) {
    std::size_t x = 0;
    for (std::size_t j = factors.size(); j-- > 0;) x = x * factors[j] + v[j];
    return x;
  };
  std::vector<Perm> gens;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j] < 2) continue;
    std::vector<Point> images(size);
    for (std::size_t x = 0; x < size; ++x) {
      auto v = decode(x);
      v[j] = (v[j] + 1) % factors[j];
      images[x] = static_cast<Point>(encode(v));
    }
    gens.emplace_back(std::move(images));
  }
  std::vector<Point> inversion(size);
  for (std::size_t x = 0; x < size; ++x) {
    auto v = decode(x);
    for (std::size_t j = 0; j < factors.size(); ++j) v[j] = (factors[j] - v[j]) % factors[j];
    inversion[x] = static_cast<Point>(encode(v));
  }
  gens.emplace_back(std::move(inversion));
  return PermGroup::generate(size, std::move(gens), name, cap);
}

}  // namespace

std::string normalize_group_spec(std::string_view spec) {
  std::string out;
  bool in_perm = spec.find("perm") != std::string_view::npos;
  // Inside perm(...) blanks separate cycle points, so they are collapsed to a
  // single space rather than dropped.
  bool pending_space = false;
  for (char ch : spec) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = true;
      continue;
    }
    if (pending_space && in_perm && !out.empty() && std::isdigit(static_cast<unsigned char>(ch)) &&
        std::isdigit(static_cast<unsigned char>(out.back()))) {
      out += ' ';
    }
    pending_space = false;
    out += ch;
  }
  return out;
}

PermGroup parse_group_spec(std::string_view raw, std::size_t cap) {
  const std::string spec = normalize_group_spec(raw);
  if (spec.empty()) throw ParseError("empty group spec");

  if (spec.rfind("perm(", 0) == 0) {
    if (spec.back() != ')') throw ParseError("perm(...) is missing its closing parenthesis");
    const std::string body = spec.substr(5, spec.size() - 6);
    const auto semi = body.find(';');
    if (semi == std::string::npos) throw ParseError("perm(...) needs '<degree>;' before the generators");
    const std::size_t degree = parse_count(body.substr(0, semi), "perm degree");
    if (degree == 0) throw DegenerateInput("perm degree must be positive");
    std::vector<Perm> gens;
    for (const std::string& item : split_top_level(body.substr(semi + 1))) {
      gens.push_back(Perm::from_cycles(item, degree));
    }
    return PermGroup::generate(degree, std::move(gens), spec, cap);
  }

  if (spec.rfind("GDih(", 0) == 0) {
    if (spec.back() != ')') throw ParseError("GDih(...) is missing its closing parenthesis");
    std::vector<std::size_t> factors;
    for (const std::string& item : split_top_level(spec.substr(5, spec.size() - 6))) {
      factors.push_back(parse_count(item, "GDih factor"));
    }
    if (factors.empty()) throw ParseError("GDih needs at least one factor");
    return generalized_dihedral(factors, spec, cap);
  }

  const char family = spec.front();
  if (family != 'S' && family != 'A' && family != 'D' && family != 'C') {
    throw ParseError("unknown group family in \"" + spec + "\"");
  }
  const std::size_t n = parse_count(std::string_view(spec).substr(1), "group parameter");
  if (n == 0) throw DegenerateInput("group parameter must be positive");
  switch (family) {
    case 'S':
      return symmetric(n, spec, cap);
    case 'A':
      return alternating(n, spec, cap);
    case 'D':
      return dihedral(n, spec, cap);
    default:
      return cyclic(n, spec, cap);
  }
}

}  // namespace nbl
