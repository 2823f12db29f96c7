#pragma once

/**
 * @file constructions.hpp
 * @brief Permutation representations of finite abelian groups.
 *
 * Regular and disjoint-cyclic representations, the non-closure witness for
 * abelian p-groups and its extension to arbitrary abelian groups, and an
 * exhaustive enumeration of faithful actions on a bounded number of points.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "abelian.hpp"
#include "errors.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"

namespace kclosure {

/// Cycle on the consecutive block [offset, offset+length), p -> p+1 wrapping.
inline Permutation block_cycle(std::size_t degree, std::size_t offset,
                               std::size_t length) {
  Cycle c;
  for (std::size_t i = 0; i < length; ++i) c.points.push_back(static_cast<Point>(offset + i));
  return c.to_permutation(degree);
}

/// Z_m acting regularly: <(1,2,...,m)>; m = 1 gives the trivial group on 1 point.
inline PermGroup regular_rep(std::size_t m) {
  if (m == 0) throw InputError("regular representation needs m >= 1");
  if (m == 1) return PermGroup::trivial(1);
  return PermGroup(m, {block_cycle(m, 0, m)});
}

/// Regular action of Z_{o_1} x ... x Z_{o_r} on itself (mixed-radix points,
/// first factor least significant), placed at `offset` inside `degree`.
inline std::vector<Permutation> regular_abelian_generators(
    std::span<const std::uint64_t> orders, std::size_t degree, std::size_t offset) {
  std::size_t size = 1;
  for (auto o : orders) size *= o;
  std::vector<Permutation> gens;
  std::size_t stride = 1;
  for (auto o : orders) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t digit = (x / stride) % o;
      std::size_t y = x - digit * stride + ((digit + 1) % o) * stride;
      images[offset + x] = static_cast<Point>(offset + y);
    }
    gens.push_back(Permutation::from_images(std::move(images)));
    stride *= o;
  }
  return gens;
}

/// One cycle per factor, each on its own block of consecutive points.
inline PermGroup disjoint_cyclic_rep(std::span<const std::uint64_t> orders) {
  std::size_t degree = 0;
  for (auto o : orders) {
    if (o < 2) throw InputError("cyclic factor order must be at least 2");
    degree += o;
  }
  if (degree == 0) return PermGroup::trivial(1);
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (auto o : orders) {
    gens.push_back(block_cycle(degree, offset, o));
    offset += o;
  }
  return PermGroup(degree, std::move(gens));
}

/// The p-group witness: independent cycles tau_0..tau_n on consecutive
/// blocks delta_0..delta_n with |tau_0| = d_1 and |tau_i| = d_i, and
/// H = <tau_0 tau_1, tau_0^-1 tau_i (i >= 2)>. Then H is isomorphic to
/// Z_{d_1} x ... x Z_{d_n}, tau_0 is not in H, yet tau_0 lies in H^(n).
struct WitnessRep {
  PermGroup group{1};
  Permutation tau0;
  std::vector<Permutation> taus;  ///< tau_0, ..., tau_n
  std::vector<PointSet> deltas;   ///< delta_0, ..., delta_n
  std::vector<std::uint64_t> factor_orders;
  std::uint64_t prime = 0;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d <= p / d; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool is_power_of(std::uint64_t m, std::uint64_t p) {
  if (m < 1) return false;
  while (m % p == 0) m /= p;
  return m == 1;
}

inline WitnessRep pgroup_witness(std::span<const std::uint64_t> d, std::uint64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (d.empty()) throw InputError("witness needs at least one invariant factor");
  if (d[0] < 2) throw InputError("first invariant factor must exceed 1");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_power_of(d[i], p))
      throw InputError(std::to_string(d[i]) + " is not a power of " + std::to_string(p));
    if (i + 1 < d.size() && d[i + 1] % d[i] != 0)
      throw InputError("invariant factors must form a divisibility chain");
  }

  WitnessRep w;
  w.prime = p;
  w.factor_orders.assign(d.begin(), d.end());
  std::vector<std::uint64_t> lengths{d[0]};
  lengths.insert(lengths.end(), d.begin(), d.end());
  std::size_t degree = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});

  std::size_t offset = 0;
  for (auto len : lengths) {
    w.taus.push_back(block_cycle(degree, offset, len));
    PointSet delta(len);
    std::iota(delta.begin(), delta.end(), static_cast<Point>(offset));
    w.deltas.push_back(std::move(delta));
    offset += len;
  }
  w.tau0 = w.taus[0];

  std::vector<Permutation> gens{w.taus[0] * w.taus[1]};
  Permutation tau0_inv = w.taus[0].inverse();
  for (std::size_t i = 2; i < w.taus.size(); ++i) gens.push_back(tau0_inv * w.taus[i]);
  w.group = PermGroup(degree, std::move(gens));

  std::uint64_t expected = 1;
  for (auto x : d) expected = detail::checked_mul(expected, x);
  if (w.group.order() != expected || !w.group.is_abelian() || w.group.contains(w.tau0))
    throw std::logic_error("p-group witness failed its own post-conditions");
  return w;
}

/// Faithful representation of an arbitrary nontrivial abelian group that is
/// not n(G)-closed: the q-primary witness for a prime q with n(G_q) = n(G),
/// next to the regular representation of every other Sylow subgroup.
struct MixedWitness {
  PermGroup group{1};
  Permutation tau0;  ///< tau_0 of the q-part, identity elsewhere
  std::uint64_t prime = 0;
  WitnessRep primary;
  std::vector<std::pair<std::uint64_t, PointSet>> regular_blocks;
};

inline MixedWitness mixed_witness_rep(const AbelianSpec &spec) {
  if (spec.is_trivial()) throw InputError("witness needs a nontrivial group");
  auto primary = primary_decomposition(spec);
  std::size_t n = n_of(spec);
  std::uint64_t q = 0;
  for (const auto &[p, list] : primary)
    if (list.size() == n) {
      q = p;
      break;
    }

  MixedWitness out;
  out.prime = q;
  out.primary = pgroup_witness(primary.at(q), q);

  std::size_t degree = out.primary.group.degree();
  for (const auto &[p, list] : primary)
    if (p != q) {
      std::size_t size = 1;
      for (auto o : list) size *= o;
      degree += size;
    }

  auto widen = [degree](const Permutation &x) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (Point i = 0; i < x.degree(); ++i) images[i] = x[i];
    return Permutation::from_images(std::move(images));
  };

  std::vector<Permutation> gens;
  for (const auto &g : out.primary.group.generators()) gens.push_back(widen(g));
  out.tau0 = widen(out.primary.tau0);

  std::size_t offset = out.primary.group.degree();
  for (const auto &[p, list] : primary) {
    if (p == q) continue;
    auto regular = regular_abelian_generators(list, degree, offset);
    gens.insert(gens.end(), regular.begin(), regular.end());
    std::size_t size = 1;
    for (auto o : list) size *= o;
    PointSet block(size);
    std::iota(block.begin(), block.end(), static_cast<Point>(offset));
    out.regular_blocks.emplace_back(p, std::move(block));
    offset += size;
  }
  out.group = PermGroup(degree, std::move(gens));
  return out;
}

inline PermGroup mixed_witness(const AbelianSpec &spec) {
  return mixed_witness_rep(spec).group;
}

/// Invariant factors of an abelian permutation group, read off the element
/// orders: G_p has log_p(c_j / c_{j-1}) cyclic factors of order >= p^j, where
/// c_j counts the elements whose order divides p^j.
inline InvariantFactors abelian_invariant_factors(const PermGroup &g,
                                                  std::uint64_t cap = kDefaultElementCap) {
  if (!g.is_abelian()) throw InputError("group is not abelian");
  std::map<std::uint64_t, std::uint64_t> order_counts;
  for (const auto &x : elements(g, cap)) ++order_counts[x.order()];

  std::vector<std::uint64_t> prime_powers;
  for (auto p : prime_divisors(g.order())) {
    auto count_dividing = [&](std::uint64_t m) {
      std::uint64_t c = 0;
      for (const auto &[o, n] : order_counts)
        if (m % o == 0) c += n;
      return c;
    };
    std::vector<std::size_t> at_least;  // factors of order >= p^j, j = 1, 2, ...
    std::uint64_t power = 1, previous = 1;
    for (;;) {
      power *= p;
      std::uint64_t c = count_dividing(power);
      if (c == previous) break;
      std::size_t e = 0;
      for (std::uint64_t ratio = c / previous; ratio > 1; ratio /= p) ++e;
      at_least.push_back(e);
      previous = c;
    }
    std::uint64_t q = 1;
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      q *= p;
      std::size_t next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
      for (std::size_t i = next; i < at_least[j]; ++i) prime_powers.push_back(q);
    }
  }
  return invariant_factors(AbelianSpec(prime_powers));
}

/// Element table of Z_{o_1} x ... x Z_{o_r}: elements are mixed-radix
/// integers with the first factor least significant.
class AbelianTable {
 public:
  explicit AbelianTable(const AbelianSpec &spec) : orders_(spec.orders()) {
    size_ = 1;
    for (auto o : orders_) size_ *= o;
  }

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::uint64_t> &orders() const noexcept { return orders_; }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t out = 0, stride = 1;
    for (auto o : orders_) {
      out += ((a / stride % o + b / stride % o) % o) * stride;
      stride *= o;
    }
    return out;
  }

  /// Unit vector of factor j.
  std::size_t unit(std::size_t j) const {
    std::size_t stride = 1;
    for (std::size_t i = 0; i < j; ++i) stride *= orders_[i];
    return stride;
  }

 private:
  std::vector<std::uint64_t> orders_;
  std::size_t size_;
};

using Subgroup = std::vector<std::size_t>;  ///< sorted element indices

/// Every subgroup, as joins of cyclic subgroups; sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const AbelianTable &table) {
  std::set<Subgroup> cyclic;
  for (std::size_t g = 0; g < table.size(); ++g) {
    Subgroup s{0};
    for (std::size_t x = g; x != 0; x = table.add(x, g)) s.push_back(x);
    std::sort(s.begin(), s.end());
    cyclic.insert(std::move(s));
  }
  std::set<Subgroup> found(cyclic.begin(), cyclic.end());
  std::vector<Subgroup> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto &a : frontier)
      for (const auto &c : cyclic) {
        // A + C for subgroups of an abelian group
        std::set<std::size_t> sum;
        for (auto x : a)
          for (auto y : c) sum.insert(table.add(x, y));
        Subgroup s(sum.begin(), sum.end());
        if (found.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto &a, const auto &b) { return a.size() < b.size(); });
  return out;
}

struct FaithfulAction {
  std::vector<std::size_t> subgroup_ids;  ///< into all_subgroups(), non-decreasing
  std::vector<std::size_t> indices;       ///< orbit lengths [G:K_i]
  PermGroup group{1};
};

inline constexpr std::uint64_t kMaxEnumeratedOrder = 256;
inline constexpr std::size_t kMaxEnumeratedPoints = 20;

/// Streams every faithful action of the group on at most `max_points` points
/// without fixed points: one per multiset {K_1..K_r} of proper subgroups with
/// trivial intersection and sum of indices <= max_points, acting on the
/// disjoint union of the coset spaces.
inline void for_each_faithful_action(const AbelianSpec &spec, std::size_t max_points,
                                     const std::function<void(FaithfulAction &&)> &emit) {
  if (spec.order() > kMaxEnumeratedOrder)
    throw CapExceeded("faithful-action enumeration group order", spec.order(),
                      kMaxEnumeratedOrder);
  if (max_points > kMaxEnumeratedPoints)
    throw CapExceeded("faithful-action enumeration points", max_points,
                      kMaxEnumeratedPoints);
  if (spec.is_trivial()) return;

  AbelianTable table(spec);
  auto subgroups = all_subgroups(table);
  const std::size_t order = table.size();
  subgroups.pop_back();  // G itself

  // coset label of each element for each subgroup: index of the coset's
  // least element among the coset representatives
  std::vector<std::vector<std::size_t>> coset_of(subgroups.size());
  for (std::size_t s = 0; s < subgroups.size(); ++s) {
    std::vector<std::size_t> label(order, static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (std::size_t g = 0; g < order; ++g) {
      if (label[g] != static_cast<std::size_t>(-1)) continue;
      for (auto k : subgroups[s]) label[table.add(g, k)] = next;
      ++next;
    }
    coset_of[s] = std::move(label);
  }

  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t, std::vector<bool>)> recurse =
      [&](std::size_t from, std::size_t used_points, std::vector<bool> meet) {
        if (!chosen.empty() && std::count(meet.begin(), meet.end(), true) == 1) {
          FaithfulAction action;
          action.subgroup_ids = chosen;
          std::size_t degree = used_points;
          std::vector<std::vector<Point>> images(spec.orders().size(),
                                                 std::vector<Point>(degree));
          std::size_t offset = 0;
          for (auto s : chosen) {
            std::size_t index = order / subgroups[s].size();
            action.indices.push_back(index);
            for (std::size_t j = 0; j < spec.orders().size(); ++j) {
              std::size_t e = table.unit(j);
              for (std::size_t g = 0; g < order; ++g)
                images[j][offset + coset_of[s][g]] =
                    static_cast<Point>(offset + coset_of[s][table.add(g, e)]);
            }
            offset += index;
          }
          std::vector<Permutation> gens;
          for (auto &im : images) gens.push_back(Permutation::from_images(std::move(im)));
          action.group = PermGroup(degree, std::move(gens));
          emit(std::move(action));
        }
        for (std::size_t s = from; s < subgroups.size(); ++s) {
          std::size_t index = order / subgroups[s].size();
          if (used_points + index > max_points) continue;
          std::vector<bool> next(order, false);
          for (auto k : subgroups[s])
            if (meet[k]) next[k] = true;
          chosen.push_back(s);
          recurse(s, used_points + index, std::move(next));
          chosen.pop_back();
        }
      };
  recurse(0, 0, std::vector<bool>(order, true));
}

inline std::vector<FaithfulAction> enumerate_faithful_actions(const AbelianSpec &spec,
                                                              std::size_t max_points) {
  std::vector<FaithfulAction> out;
  for_each_faithful_action(spec, max_points,
                           [&](FaithfulAction &&a) { out.push_back(std::move(a)); });
  return out;
}

}  // namespace kclosure
