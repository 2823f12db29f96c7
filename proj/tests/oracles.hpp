#pragma once

// Brute-force references for the tests. Nothing here touches
// StabilizerChain or TupleOrbitIndex: groups are closed element by element
// and closures are read straight off the definition (x is in G^(k) iff
// every k-tuple is moved by x to the same place as by some g in G).

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include "kclosure/permutation.hpp"

namespace oracle {

using kclosure::Permutation;
using kclosure::Point;

inline std::vector<Permutation> close_elements(std::size_t degree,
                                               const std::vector<Permutation> &gens) {
  std::set<Permutation> seen{Permutation(degree)};
  std::vector<Permutation> queue{Permutation(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto &g : gens) {
      Permutation y = queue[i] * g;
      if (seen.insert(y).second) queue.push_back(y);
    }
  return {seen.begin(), seen.end()};
}

inline std::vector<Permutation> symmetric_group(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Permutation> out;
  do out.push_back(Permutation::from_images(images));
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

inline std::uint64_t encode(const std::vector<Point> &t, std::size_t degree) {
  std::uint64_t c = 0;
  for (auto p : t) c = c * degree + p;
  return c;
}

/// All k-tuples over {0..degree-1}, lexicographic.
inline std::vector<std::vector<Point>> all_tuples(std::size_t degree, std::size_t k) {
  std::vector<std::vector<Point>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<Point>> next;
    for (const auto &t : out)
      for (Point p = 0; p < degree; ++p) {
        auto u = t;
        u.push_back(p);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Point> image(const std::vector<Point> &t, const Permutation &x) {
  std::vector<Point> out;
  for (auto p : t) out.push_back(x[p]);
  return out;
}

/// Sorted elements of G^(k), straight from the definition.
inline std::vector<Permutation> closure_elements(std::size_t degree,
                                                 const std::vector<Permutation> &gens,
                                                 std::size_t k) {
  auto group = close_elements(degree, gens);
  auto tuples = all_tuples(degree, k);
  std::vector<std::unordered_set<std::uint64_t>> reach(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (const auto &g : group) reach[i].insert(encode(image(tuples[i], g), degree));
  std::vector<Permutation> out;
  for (const auto &x : symmetric_group(degree)) {
    bool ok = true;
    for (std::size_t i = 0; i < tuples.size() && ok; ++i)
      ok = reach[i].count(encode(image(tuples[i], x), degree)) > 0;
    if (ok) out.push_back(x);
  }
  return out;
}

/// Membership of one x in G^(k), straight from the definition.
inline bool in_closure(std::size_t degree, const std::vector<Permutation> &gens,
                       const Permutation &x, std::size_t k) {
  auto group = close_elements(degree, gens);
  for (const auto &t : all_tuples(degree, k)) {
    auto target = image(t, x);
    bool found = std::any_of(group.begin(), group.end(),
                             [&](const auto &g) { return image(t, g) == target; });
    if (!found) return false;
  }
  return true;
}

/// Smallest b such that some b-subset has trivial pointwise stabilizer.
inline std::size_t min_base(std::size_t degree, const std::vector<Permutation> &gens) {
  auto group = close_elements(degree, gens);
  for (std::size_t b = 0; b <= degree; ++b) {
    std::vector<bool> pick(degree, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(b), true);
    std::sort(pick.begin(), pick.end());
    do {
      std::size_t fixing = 0;
      for (const auto &g : group) {
        bool fixes = true;
        for (Point p = 0; p < degree && fixes; ++p)
          if (pick[p] && g[p] != p) fixes = false;
        if (fixes) ++fixing;
      }
      if (fixing == 1) return b;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return degree;
}

inline std::vector<Permutation> parse_all(std::size_t degree,
                                          std::initializer_list<const char *> cycles) {
  std::vector<Permutation> out;
  for (const char *c : cycles) out.push_back(kclosure::parse_cycle_notation(c, degree));
  return out;
}

}  // namespace oracle
