#pragma once

/**
 * @file perm_group.hpp
 * @brief Permutation groups given by generators.
 *
 * A PermGroup is a value: degree plus generators, with a stabilizer chain
 * built on first use. The chain is built under std::call_once and shared
 * between copies, so a group may be queried from several threads.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <span>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"
#include "stabilizer_chain.hpp"

namespace kclosure {

inline constexpr std::uint64_t kDefaultElementCap = 1'000'000;

using PointSet = std::vector<Point>;

class PermGroup {
 public:
  explicit PermGroup(std::size_t degree, std::vector<Permutation> generators = {})
      : degree_(degree),
        generators_(std::move(generators)),
        lazy_(std::make_shared<Lazy>()) {
    if (degree == 0) throw InputError("group degree must be positive");
    for (const auto &g : generators_)
      if (g.degree() != degree)
        throw InputError("generator degree " + std::to_string(g.degree()) +
                         " differs from group degree " + std::to_string(degree));
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation> &generators() const noexcept { return generators_; }

  const StabilizerChain &chain() const {
    std::call_once(lazy_->once, [this] {
      lazy_->chain = std::make_unique<StabilizerChain>(degree_, generators_);
    });
    return *lazy_->chain;
  }

  std::uint64_t order() const { return chain().order(); }

  bool contains(const Permutation &x) const {
    if (x.degree() != degree_)
      throw InputError("degree mismatch: element of degree " +
                       std::to_string(x.degree()) + ", group of degree " +
                       std::to_string(degree_));
    return chain().contains(x);
  }

  bool is_trivial() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](const auto &g) { return g.is_identity(); });
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (generators_[i] * generators_[j] != generators_[j] * generators_[i])
          return false;
    return true;
  }

  /// True iff every generator of `sub` lies in this group.
  bool contains_group(const PermGroup &sub) const {
    return std::all_of(sub.generators().begin(), sub.generators().end(),
                       [this](const auto &g) { return contains(g); });
  }

  /// Equality as subgroups of Sym(degree).
  bool same_group(const PermGroup &other) const {
    return degree_ == other.degree_ && order() == other.order() &&
           contains_group(other);
  }

 private:
  struct Lazy {
    std::once_flag once;
    std::unique_ptr<StabilizerChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Lazy> lazy_;
};

struct OrbitPartition {
  std::size_t degree = 0;
  std::vector<std::size_t> orbit_id;  ///< point -> index into `orbits`
  std::vector<PointSet> orbits;       ///< ascending, ordered by least point

  bool operator==(const OrbitPartition &) const = default;
};

/// Orbits of the group generated by `generators` on {0..degree-1}.
inline OrbitPartition orbits_of(std::size_t degree,
                                std::span<const Permutation> generators) {
  OrbitPartition result;
  result.degree = degree;
  constexpr auto unset = static_cast<std::size_t>(-1);
  result.orbit_id.assign(degree, unset);
  for (Point p = 0; p < degree; ++p) {
    if (result.orbit_id[p] != unset) continue;
    std::size_t id = result.orbits.size();
    PointSet orbit{p};
    result.orbit_id[p] = id;
    for (std::size_t j = 0; j < orbit.size(); ++j)
      for (const auto &g : generators) {
        Point q = g[orbit[j]];
        if (result.orbit_id[q] == unset) {
          result.orbit_id[q] = id;
          orbit.push_back(q);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    result.orbits.push_back(std::move(orbit));
  }
  return result;
}

inline OrbitPartition orbits(const PermGroup &g) {
  return orbits_of(g.degree(), g.generators());
}

inline std::uint64_t group_order(const PermGroup &g) { return g.order(); }

inline bool contains(const PermGroup &g, const Permutation &x) {
  return g.contains(x);
}

/// Every element exactly once, sorted by image table (identity first).
inline std::vector<Permutation> elements(const PermGroup &g,
                                         std::uint64_t cap = kDefaultElementCap) {
  const auto &chain = g.chain();
  std::uint64_t n = chain.order();
  if (n > cap) throw CapExceeded("element enumeration", n, cap);

  std::vector<Permutation> result{Permutation(g.degree())};
  result.reserve(n);
  // g = u_{d-1} ... u_1 u_0 with u_i from the level-i transversal
  for (std::size_t i = chain.depth(); i-- > 0;) {
    const auto &level = chain.levels()[i];
    std::vector<Permutation> next;
    next.reserve(result.size() * level.orbit.size());
    for (const auto &h : result)
      for (Point p : level.orbit) next.push_back(h * *level.transversal[p]);
    result = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

inline PermGroup point_stabilizer(const PermGroup &g, Point alpha) {
  if (alpha >= g.degree()) throw InputError("point out of range");
  const Point prefix[] = {alpha};
  StabilizerChain chain(g.degree(), g.generators(), prefix);
  return PermGroup(g.degree(), chain.stabilizer_generators(1));
}

/// Pointwise stabilizer of a tuple of points.
inline PermGroup pointwise_stabilizer(const PermGroup &g,
                                      std::span<const Point> points) {
  for (Point p : points)
    if (p >= g.degree()) throw InputError("point out of range");
  StabilizerChain chain(g.degree(), g.generators(), points);
  return PermGroup(g.degree(), chain.stabilizer_generators(points.size()));
}

inline bool is_base(const PermGroup &g, std::span<const Point> points) {
  for (Point p : points)
    if (p >= g.degree()) throw InputError("point out of range");
  StabilizerChain chain(g.degree(), g.generators(), points);
  return chain.order(points.size()) == 1;
}

/// Builds the subgroup generated by a set of elements (small generating set
/// chosen greedily from the list).
inline PermGroup subgroup_from_elements(std::size_t degree,
                                        std::span<const Permutation> members) {
  PermGroup current(degree);
  for (const auto &x : members) {
    if (x.is_identity() || current.contains(x)) continue;
    auto gens = current.generators();
    gens.push_back(x);
    current = PermGroup(degree, std::move(gens));
  }
  return current;
}

/// { g in G : B^g = B for every block B }, by filtering elements(G).
inline PermGroup setwise_stabilizer_of_blocks(const PermGroup &g,
                                              std::span<const PointSet> blocks,
                                              std::uint64_t cap = kDefaultElementCap) {
  std::vector<std::vector<bool>> member;
  for (const auto &block : blocks) {
    std::vector<bool> in(g.degree(), false);
    for (Point p : block) {
      if (p >= g.degree()) throw InputError("block point out of range");
      in[p] = true;
    }
    member.push_back(std::move(in));
  }
  if (blocks.empty()) return g;

  std::vector<Permutation> kept;
  for (const auto &x : elements(g, cap)) {
    bool ok = true;
    for (std::size_t b = 0; b < blocks.size() && ok; ++b)
      for (Point p : blocks[b])
        if (!member[b][x[p]]) {
          ok = false;
          break;
        }
    if (ok) kept.push_back(x);
  }
  return subgroup_from_elements(g.degree(), kept);
}

/// Induced action on an invariant set `delta`, relabeled 0..|delta|-1 in
/// increasing order of the original labels.
inline Permutation restrict_permutation(const Permutation &x,
                                        std::span<const Point> sorted_delta) {
  std::vector<Point> images(sorted_delta.size());
  for (std::size_t i = 0; i < sorted_delta.size(); ++i) {
    auto it = std::lower_bound(sorted_delta.begin(), sorted_delta.end(),
                               x[sorted_delta[i]]);
    if (it == sorted_delta.end() || *it != x[sorted_delta[i]])
      throw InputError("set is not invariant under the element");
    images[i] = static_cast<Point>(it - sorted_delta.begin());
  }
  return Permutation::from_images(std::move(images));
}

inline PermGroup restriction(const PermGroup &g, PointSet delta) {
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  if (delta.empty()) throw InputError("cannot restrict to the empty set");
  for (Point p : delta)
    if (p >= g.degree()) throw InputError("point out of range");
  std::vector<Permutation> gens;
  for (const auto &x : g.generators()) gens.push_back(restrict_permutation(x, delta));
  return PermGroup(delta.size(), std::move(gens));
}

/// Exact minimum base size by iterative deepening over orbit
/// representatives of successive point stabilizers.
inline std::size_t minimal_base_size(const PermGroup &g) {
  if (g.order() == 1) return 0;

  // pointwise stabilizers depend only on the point set
  std::map<PointSet, std::uint64_t> failed_budget;

  auto lower_bound = [](std::uint64_t order, std::size_t largest_orbit) {
    std::size_t need = 0;
    std::uint64_t reach = 1;
    while (reach < order) {
      reach = largest_orbit <= 1 ? order : reach * largest_orbit;
      ++need;
    }
    return need;
  };

  struct Search {
    std::map<PointSet, std::uint64_t> &failed;
    decltype(lower_bound) &bound;

    bool exists(const PermGroup &h, PointSet chosen, std::size_t budget) {
      std::uint64_t order = h.order();
      if (order == 1) return true;
      if (budget == 0) return false;
      auto parts = orbits(h);
      std::size_t largest = 1;
      for (const auto &o : parts.orbits) largest = std::max(largest, o.size());
      if (bound(order, largest) > budget) return false;
      auto it = failed.find(chosen);
      if (it != failed.end() && it->second >= budget) return false;

      // larger orbits first: they cut the stabilizer most
      std::vector<const PointSet *> reps;
      for (const auto &o : parts.orbits)
        if (o.size() > 1) reps.push_back(&o);
      std::stable_sort(reps.begin(), reps.end(),
                       [](auto *a, auto *b) { return a->size() > b->size(); });
      for (const auto *o : reps) {
        Point rep = o->front();
        PointSet next = chosen;
        next.insert(std::upper_bound(next.begin(), next.end(), rep), rep);
        if (exists(point_stabilizer(h, rep), next, budget - 1)) return true;
      }
      failed[chosen] = std::max(failed[chosen], static_cast<std::uint64_t>(budget));
      return false;
    }
  } search{failed_budget, lower_bound};

  for (std::size_t b = 1;; ++b)
    if (search.exists(g, {}, b)) return b;
}

/// Generators of the Hall subgroup for the primes in `primes` of an abelian
/// group: the pi-parts of the generators.
inline PermGroup abelian_hall_subgroup(const PermGroup &g,
                                       std::span<const std::uint64_t> primes) {
  if (!g.is_abelian()) throw InputError("group is not abelian");
  std::vector<Permutation> gens;
  for (const auto &x : g.generators()) {
    // m = |x| with its pi-part divided out
    std::uint64_t m = x.order();
    for (std::uint64_t p : primes)
      while (m % p == 0) m /= p;
    Permutation y = x.pow(static_cast<std::int64_t>(m));
    if (!y.is_identity()) gens.push_back(std::move(y));
  }
  return PermGroup(g.degree(), std::move(gens));
}

}  // namespace kclosure
