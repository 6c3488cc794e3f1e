#include "nbl/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nbl/errors.hpp"

namespace nbl {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw DegenerateInput("image sequence is not a permutation of degree " +
                            std::to_string(images_.size()));
    }
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  Perm p;
  p.images_ = std::move(images);
  return p;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::then(const Perm& h) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = h.images_[images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

std::string Perm::cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    do {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    } while (j != i);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm Perm::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw ParseError("expected '(' in cycle notation: \"" + std::string(text) + "\"");
    }
    ++pos;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos >= text.size()) {
        throw ParseError("unterminated cycle: \"" + std::string(text) + "\"");
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t value = 0;
      auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc{} || end == text.data() + pos) {
        throw ParseError("expected a point number in \"" + std::string(text) + "\"");
      }
      pos = static_cast<std::size_t>(end - text.data());
      if (value < 1 || value > degree) {
        throw DegenerateInput("point " + std::to_string(value) + " outside 1.." +
                              std::to_string(degree));
      }
      cycle.push_back(static_cast<Point>(value - 1));
    }
    for (Point p : cycle) {
      if (used[p]) {
        throw ParseError("cycles are not disjoint in \"" + std::string(text) + "\"");
      }
      used[p] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
  }
  return Perm(std::move(images));
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  auto flush = [&] {
    auto first = current.find_first_not_of(" \t\n\r");
    if (first != std::string::npos) {
      auto last = current.find_last_not_of(" \t\n\r");
      out.push_back(current.substr(first, last - first + 1));
    }
    current.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      flush();
    } else {
      current += ch;
    }
  }
  flush();
  return out;
}

}  // namespace nbl
