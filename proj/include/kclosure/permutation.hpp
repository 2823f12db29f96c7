#pragma once

/**
 * @file permutation.hpp
 * @brief Permutations of {0,...,degree-1} and their cycle notation.
 *
 * Points are 0-based internally and 1-based in every piece of text the
 * library reads or writes. Permutations act on the right:
 * p^(ab) = (p^a)^b, so `a * b` means "apply a, then b".
 */

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace kclosure {

using Point = std::uint32_t;

class Permutation {
 public:
  /// Identity on one point; mostly useful as a placeholder.
  Permutation() : images_{0} {}

  explicit Permutation(std::size_t degree) : images_(degree) {
    if (degree == 0)
      throw InputError("permutation degree must be positive");
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Builds from an image table, checking that it is a bijection.
  static Permutation from_images(std::vector<Point> images) {
    if (images.empty())
      throw InputError("permutation degree must be positive");
    std::vector<bool> seen(images.size(), false);
    for (Point p : images) {
      if (p >= images.size() || seen[p])
        throw InputError("image table is not a permutation");
      seen[p] = true;
    }
    Permutation result;
    result.images_ = std::move(images);
    return result;
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const noexcept { return images_.size(); }

  Point operator[](Point p) const noexcept {
    assert(p < images_.size());
    return images_[p];
  }

  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation result(degree());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[images_[i]] = static_cast<Point>(i);
    return result;
  }

  /// Apply *this, then `rhs`.
  Permutation operator*(const Permutation &rhs) const {
    if (degree() != rhs.degree())
      throw InputError("degree mismatch: " + std::to_string(degree()) +
                       " vs " + std::to_string(rhs.degree()));
    Permutation result(degree());
    for (std::size_t i = 0; i < images_.size(); ++i)
      result.images_[i] = rhs.images_[images_[i]];
    return result;
  }

  Permutation &operator*=(const Permutation &rhs) { return *this = *this * rhs; }

  /// x^e for any integer e, negative exponents via the inverse.
  Permutation pow(std::int64_t e) const {
    Permutation base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1
                            : static_cast<std::uint64_t>(e);
    Permutation result(degree());
    while (n) {
      if (n & 1) result *= base;
      base *= base;
      n >>= 1;
    }
    return result;
  }

  /// Element order: lcm of the cycle lengths.
  std::uint64_t order() const {
    std::uint64_t result = 1;
    std::vector<bool> seen(degree(), false);
    for (Point p = 0; p < degree(); ++p) {
      if (seen[p]) continue;
      std::uint64_t len = 0;
      for (Point q = p; !seen[q]; q = images_[q]) {
        seen[q] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  bool operator==(const Permutation &) const = default;
  auto operator<=>(const Permutation &) const = default;

 private:
  std::vector<Point> images_;
};

inline Permutation compose(const Permutation &a, const Permutation &b) {
  return a * b;
}

/// A single nontrivial cycle (p0 p1 ... p_{m-1}), p_i -> p_{i+1}.
struct Cycle {
  std::vector<Point> points;

  std::size_t length() const noexcept { return points.size(); }

  /// The permutation of the given degree moving exactly these points.
  Permutation to_permutation(std::size_t degree) const {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] >= degree)
        throw InputError("cycle point out of range");
      images[points[i]] = points[(i + 1) % points.size()];
    }
    return Permutation::from_images(std::move(images));
  }

  bool operator==(const Cycle &) const = default;
};

/// Disjoint cycles of `a`, fixed points omitted, each cycle starting at its
/// least point, cycles ordered by least point.
inline std::vector<Cycle> cycle_decomposition(const Permutation &a) {
  std::vector<Cycle> result;
  std::vector<bool> seen(a.degree(), false);
  for (Point p = 0; p < a.degree(); ++p) {
    if (seen[p] || a[p] == p) continue;
    Cycle c;
    for (Point q = p; !seen[q]; q = a[q]) {
      seen[q] = true;
      c.points.push_back(q);
    }
    result.push_back(std::move(c));
  }
  return result;
}

/// Points moved by `a`, ascending.
inline std::vector<Point> support(const Permutation &a) {
  std::vector<Point> result;
  for (Point p = 0; p < a.degree(); ++p)
    if (a[p] != p) result.push_back(p);
  return result;
}

/// True iff the cycles move pairwise disjoint point sets.
inline bool are_independent(std::span<const Cycle> cycles) {
  std::vector<Point> all;
  for (const auto &c : cycles) all.insert(all.end(), c.points.begin(), c.points.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

/// Canonical 1-based cycle notation, "()" for the identity.
inline std::string to_string(const Permutation &a) {
  auto cycles = cycle_decomposition(a);
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto &c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c.points[i] + 1);
    }
    out += ')';
  }
  return out;
}

/// Parses cycle notation such as "(1,2,3)(4,5)" or "(1 2 3)" with 1-based
/// labels. Empty text and "()" give the identity. Cycles of one literal must
/// be disjoint; a one-point cycle "(3)" is accepted as a fixed point.
inline Permutation parse_cycle_notation(std::string_view text,
                                        std::size_t degree) {
  if (degree == 0) throw InputError("permutation degree must be positive");

  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_space = [&] {
    while (i < n && is_space(text[i])) ++i;
  };

  skip_space();
  while (i < n) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<Point> points;
    bool after_comma = false;
    for (;;) {
      skip_space();
      if (i >= n) throw ParseError("unterminated cycle", i);
      char c = text[i];
      if (c == ')') {
        if (after_comma) throw ParseError("expected label after ','", i);
        ++i;
        break;
      }
      if (c == ',') {
        if (points.empty() || after_comma) throw ParseError("unexpected ','", i);
        after_comma = true;
        ++i;
        continue;
      }
      if (!is_digit(c))
        throw ParseError(std::string("unexpected character '") + c + "'", i);
      std::size_t start = i;
      std::uint64_t value = 0;
      while (i < n && is_digit(text[i])) {
        if (value <= degree)
          value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        ++i;
      }
      if (value < 1 || value > degree)
        throw ParseError("label out of range 1.." + std::to_string(degree), start);
      Point p = static_cast<Point>(value - 1);
      if (std::find(points.begin(), points.end(), p) != points.end())
        throw ParseError("repeated point " + std::to_string(value) + " in cycle", start);
      if (used[p])
        throw ParseError("point " + std::to_string(value) + " appears in overlapping cycles", start);
      points.push_back(p);
      after_comma = false;
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
      used[points[j]] = true;
      images[points[j]] = points[(j + 1) % points.size()];
    }
    skip_space();
  }
  return Permutation::from_images(std::move(images));
}

}  // namespace kclosure

template <>
struct std::hash<kclosure::Permutation> {
  std::size_t operator()(const kclosure::Permutation &p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : p.images()) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};
