#pragma once

/**
 * @file closure.hpp
 * @brief Wielandt k-closures.
 *
 * The k-closure of G <= Sym(Omega) is the set of x in Sym(Omega) that map
 * every k-tuple into its own G-orbit on Omega^k. Membership is a direct
 * scan of a dense orbit table. The full closure is found by building
 * candidate images point by point (base 0,1,...,n-1), pruning a partial
 * assignment as soon as an assigned tuple leaves its orbit, and growing the
 * known subgroup K >= G level by level from the bottom of the chain until
 * every point of the level's candidate orbit is either reached by K or
 * refuted.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "abelian.hpp"
#include "errors.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "report.hpp"

namespace kclosure {

struct Caps {
  std::uint64_t max_tuples = 2'000'000;   ///< degree^k for orbit tables
  std::size_t brute_force_degree = 7;     ///< Sym(Omega) filtering
  std::uint64_t max_elements = kDefaultElementCap;
  std::size_t max_degree_k2 = 16;         ///< closure search, k <= 2
  std::size_t max_degree_k3 = 12;         ///< closure search, k >= 3
};

inline std::uint64_t tuple_count(std::size_t degree, std::size_t k,
                                 std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(total, degree, &total) || total > cap)
      throw CapExceeded("tuple table of degree " + std::to_string(degree) +
                            "^" + std::to_string(k),
                        total > cap ? total : UINT64_MAX, cap);
  }
  return total;
}

/// Labels of the G-orbits on Omega^k. A tuple (t_0..t_{k-1}) is encoded
/// base-degree with t_0 most significant, so codes are lexicographic and
/// labels are assigned in order of each orbit's least tuple.
class TupleOrbitIndex {
 public:
  TupleOrbitIndex(const PermGroup &g, std::size_t k,
                  std::uint64_t cap = Caps{}.max_tuples)
      : degree_(g.degree()), arity_(k) {
    if (k == 0) throw InputError("tuple arity must be at least 1");
    std::uint64_t size = tuple_count(degree_, k, cap);
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    labels_.assign(size, unset);

    std::vector<Point> digits(k);
    std::vector<std::uint64_t> stack;
    for (std::uint64_t code = 0; code < size; ++code) {
      if (labels_[code] != unset) continue;
      std::uint32_t label = count_++;
      labels_[code] = label;
      stack.push_back(code);
      while (!stack.empty()) {
        std::uint64_t c = stack.back();
        stack.pop_back();
        decode(c, digits);
        for (const auto &gen : g.generators()) {
          std::uint64_t image = 0;
          for (Point d : digits) image = image * degree_ + gen[d];
          if (labels_[image] == unset) {
            labels_[image] = label;
            stack.push_back(image);
          }
        }
      }
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t arity() const noexcept { return arity_; }
  std::uint32_t orbit_count() const noexcept { return count_; }
  std::uint64_t size() const noexcept { return labels_.size(); }

  std::uint32_t label(std::uint64_t code) const { return labels_[code]; }

  std::uint64_t encode(std::span<const Point> tuple) const {
    if (tuple.size() != arity_) throw InputError("tuple arity mismatch");
    std::uint64_t code = 0;
    for (Point p : tuple) {
      if (p >= degree_) throw InputError("tuple point out of range");
      code = code * degree_ + p;
    }
    return code;
  }

  std::uint32_t label_of(std::span<const Point> tuple) const {
    return labels_[encode(tuple)];
  }

  void decode(std::uint64_t code, std::vector<Point> &digits) const {
    for (std::size_t i = arity_; i-- > 0;) {
      digits[i] = static_cast<Point>(code % degree_);
      code /= degree_;
    }
  }

  /// True iff x maps every tuple into its own orbit.
  bool preserved_by(const Permutation &x) const {
    if (x.degree() != degree_) throw InputError("degree mismatch in closure test");
    std::vector<Point> digits(arity_);
    for (std::uint64_t code = 0; code < labels_.size(); ++code) {
      decode(code, digits);
      std::uint64_t image = 0;
      for (Point d : digits) image = image * degree_ + x[d];
      if (labels_[image] != labels_[code]) return false;
    }
    return true;
  }

 private:
  std::size_t degree_;
  std::size_t arity_;
  std::uint32_t count_ = 0;
  std::vector<std::uint32_t> labels_;
};

inline TupleOrbitIndex tuple_orbits(const PermGroup &g, std::size_t k,
                                    const Caps &caps = {}) {
  return TupleOrbitIndex(g, k, caps.max_tuples);
}

inline bool in_k_closure(const PermGroup &g, const Permutation &x, std::size_t k,
                         const Caps &caps = {}) {
  if (x.degree() != g.degree()) throw InputError("degree mismatch in closure test");
  return TupleOrbitIndex(g, k, caps.max_tuples).preserved_by(x);
}

namespace detail {

class ClosureSearch {
 public:
  ClosureSearch(const PermGroup &g, std::size_t k, const Caps &caps)
      : group_(g),
        degree_(g.degree()),
        arity_(k),
        index_(g, k, caps.max_tuples),
        point_orbits_(orbits(g)) {
    if (k > 2) pairs_.emplace(g, 2, caps.max_tuples);
    images_.assign(degree_, 0);
    used_.assign(degree_, false);
    digits_.assign(arity_, 0);
  }

  /// Runs the level-by-level search. With `stop_at_new`, returns as soon as
  /// one closure element outside G is found (stored in `witness`).
  PermGroup run(bool stop_at_new, std::optional<Permutation> *witness) {
    std::vector<Permutation> gens = group_.generators();
    std::vector<Point> full_base(degree_);
    std::iota(full_base.begin(), full_base.end(), Point{0});

    for (std::size_t level = degree_; level-- > 0;) {
      std::vector<bool> refuted(degree_, false);
      bool grew = true;
      while (grew) {
        grew = false;
        StabilizerChain chain(degree_, gens, full_base);
        const auto &reached = chain.levels()[level].transversal;
        const auto &candidates =
            point_orbits_.orbits[point_orbits_.orbit_id[level]];
        for (Point gamma : candidates) {
          if (gamma <= level || reached[gamma] || refuted[gamma]) continue;
          auto x = find(static_cast<Point>(level), gamma);
          if (!x) {
            // nothing in the closure maps level -> gamma, hence nothing maps
            // it into gamma's orbit under the known level stabilizer either
            mark_refuted(chain.levels()[level].generators, gamma, refuted);
            continue;
          }
          if (stop_at_new) {
            if (witness) *witness = *x;
            gens.push_back(std::move(*x));
            return PermGroup(degree_, std::move(gens));
          }
          gens.push_back(std::move(*x));
          grew = true;
          break;
        }
      }
    }
    return PermGroup(degree_, std::move(gens));
  }

 private:
  static void mark_refuted(const std::vector<Permutation> &stabilizer, Point gamma,
                           std::vector<bool> &refuted) {
    std::vector<Point> queue{gamma};
    refuted[gamma] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto &s : stabilizer) {
        Point q = s[queue[i]];
        if (!refuted[q]) {
          refuted[q] = true;
          queue.push_back(q);
        }
      }
  }

  std::optional<Permutation> find(Point level, Point gamma) {
    std::fill(used_.begin(), used_.end(), false);
    for (Point p = 0; p < level; ++p) {
      images_[p] = p;
      used_[p] = true;
    }
    images_[level] = gamma;
    used_[gamma] = true;
    if (!consistent(level)) return std::nullopt;
    if (!extend(level + 1)) return std::nullopt;
    return Permutation::from_images(images_);
  }

  bool extend(Point p) {
    if (p == degree_) return true;
    const auto &candidates = point_orbits_.orbits[point_orbits_.orbit_id[p]];
    for (Point c : candidates) {
      if (used_[c]) continue;
      images_[p] = c;
      if (!consistent(p)) continue;
      used_[c] = true;
      if (extend(p + 1)) return true;
      used_[c] = false;
    }
    return false;
  }

  // Every tuple over {0..p} that contains p keeps its label.
  bool consistent(Point p) {
    if (pairs_ && !tuples_ok(*pairs_, p)) return false;
    return tuples_ok(index_, p);
  }

  bool tuples_ok(const TupleOrbitIndex &index, Point p) {
    const std::size_t k = index.arity();
    auto &digits = digits_;
    // first occurrence of p at position j; earlier digits < p, later <= p
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0 && p == 0) break;
      for (std::size_t i = 0; i < k; ++i) digits[i] = 0;
      digits[j] = p;
      for (;;) {
        std::uint64_t code = 0, image = 0;
        for (std::size_t i = 0; i < k; ++i) {
          code = code * degree_ + digits[i];
          image = image * degree_ + images_[digits[i]];
        }
        if (index.label(code) != index.label(image)) return false;
        // odometer, skipping position j
        std::size_t i = k;
        bool done = true;
        while (i-- > 0) {
          if (i == j) continue;
          Point limit = i < j ? p : p + 1;
          if (++digits[i] < limit) {
            done = false;
            break;
          }
          digits[i] = 0;
        }
        if (done) break;
      }
    }
    return true;
  }

  const PermGroup &group_;
  std::size_t degree_;
  std::size_t arity_;
  TupleOrbitIndex index_;
  std::optional<TupleOrbitIndex> pairs_;
  OrbitPartition point_orbits_;
  std::vector<Point> images_;
  std::vector<bool> used_;
  std::vector<Point> digits_;
};

inline void check_search_caps(std::size_t degree, std::size_t k, const Caps &caps) {
  if (k == 0) throw InputError("closure arity must be at least 1");
  std::size_t limit = k <= 2 ? caps.max_degree_k2 : caps.max_degree_k3;
  if (k >= 2 && degree > limit)
    throw CapExceeded("closure search degree for k=" + std::to_string(k), degree, limit);
}

}  // namespace detail

/// Generators of G^(k): those of G followed by the new elements found.
inline PermGroup k_closure(const PermGroup &g, std::size_t k, const Caps &caps = {}) {
  detail::check_search_caps(g.degree(), k, caps);
  detail::ClosureSearch search(g, k, caps);
  return search.run(false, nullptr);
}

/// Some element of G^(k) outside G, if there is one.
inline std::optional<Permutation> closure_element_outside(const PermGroup &g,
                                                          std::size_t k,
                                                          const Caps &caps = {}) {
  detail::check_search_caps(g.degree(), k, caps);
  detail::ClosureSearch search(g, k, caps);
  std::optional<Permutation> witness;
  search.run(true, &witness);
  return witness;
}

/// Returns G when some (k-1)-tuple is a base, so that G^(k) = G without
/// search; empty otherwise.
inline std::optional<PermGroup> closure_via_base_shortcut(const PermGroup &g,
                                                          std::size_t k) {
  if (k == 0) throw InputError("closure arity must be at least 1");
  if (minimal_base_size(g) <= k - 1) return g;
  return std::nullopt;
}

struct ClosednessVerdict {
  bool closed = false;
  bool via_shortcut = false;
  std::optional<Permutation> witness;  ///< in G^(k) but not in G
};

inline ClosednessVerdict k_closedness(const PermGroup &g, std::size_t k,
                                      const Caps &caps = {}, bool use_shortcut = true) {
  if (use_shortcut && closure_via_base_shortcut(g, k)) return {true, true, std::nullopt};
  auto x = closure_element_outside(g, k, caps);
  return {!x.has_value(), false, std::move(x)};
}

inline bool is_k_closed(const PermGroup &g, std::size_t k, const Caps &caps = {}) {
  return k_closedness(g, k, caps).closed;
}

/// G^(k) by filtering every permutation of Sym(Omega) through the orbit
/// table; only for degree <= caps.brute_force_degree.
inline PermGroup brute_force_k_closure(const PermGroup &g, std::size_t k,
                                       const Caps &caps = {}) {
  if (g.degree() > caps.brute_force_degree)
    throw CapExceeded("brute-force closure degree", g.degree(), caps.brute_force_degree);
  TupleOrbitIndex index(g, k, caps.max_tuples);
  std::vector<Point> images(g.degree());
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Permutation> members;
  do {
    auto x = Permutation::from_images(images);
    if (index.preserved_by(x)) members.push_back(std::move(x));
  } while (std::next_permutation(images.begin(), images.end()));
  return subgroup_from_elements(g.degree(), members);
}

struct SylowSubgroup {
  std::uint64_t prime;
  PermGroup group;
};

/// One Sylow subgroup per prime dividing |G|, primes ascending.
inline std::vector<SylowSubgroup> abelian_sylow_subgroups(const PermGroup &g) {
  if (!g.is_abelian()) throw InputError("group is not abelian");
  std::vector<SylowSubgroup> out;
  for (auto p : prime_divisors(g.order())) {
    const std::uint64_t primes[] = {p};
    out.push_back({p, abelian_hall_subgroup(g, primes)});
  }
  return out;
}

/// Compares G^(k) with the group generated by the k-closures of the Sylow
/// subgroups of an abelian G.
inline VerificationReport closure_product_check(const PermGroup &g, std::size_t k,
                                                const Caps &caps = {}) {
  if (!g.is_abelian()) throw InputError("closure product check needs an abelian group");
  if (k < 2) throw InputError("closure product check needs k >= 2");
  Stopwatch clock;
  VerificationReport report;
  report.campaign = "closure-product";
  json gens = json::array();
  for (const auto &x : g.generators()) gens.push_back(to_string(x));
  report.inputs = {{"degree", g.degree()}, {"generators", gens}, {"k", k}};

  PermGroup left = k_closure(g, k, caps);
  std::vector<Permutation> right_gens;
  json parts = json::array();
  for (const auto &[p, sylow] : abelian_sylow_subgroups(g)) {
    PermGroup closed = k_closure(sylow, k, caps);
    parts.push_back({{"prime", p},
                     {"sylow_order", sylow.order()},
                     {"closure_order", closed.order()}});
    right_gens.insert(right_gens.end(), closed.generators().begin(),
                      closed.generators().end());
  }
  PermGroup right(g.degree(), std::move(right_gens));

  report.details["left_order"] = left.order();
  report.details["right_order"] = right.order();
  report.details["sylow_closures"] = parts;
  report.expect_eq("|G^(k)| equals |prod P^(k)|", left.order(), right.order());
  report.expect_true("prod P^(k) is contained in G^(k)", left.contains_group(right));
  report.expect_true("G^(k) is contained in prod P^(k)", right.contains_group(left));
  report.wall_time = clock.seconds();
  return report;
}

}  // namespace kclosure
