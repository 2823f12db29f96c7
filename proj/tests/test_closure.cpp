#include <gtest/gtest.h>

#include <set>

#include "kclosure/closure.hpp"
#include "kclosure/constructions.hpp"
#include "oracles.hpp"

using namespace kclosure;
using oracle::parse_all;

namespace {

PermGroup make(std::size_t degree, std::initializer_list<const char *> gens) {
  return PermGroup(degree, parse_all(degree, gens));
}

PermGroup s3_on_five() { return make(5, {"(1,2,3)", "(1,2)(4,5)"}); }
PermGroup s3() { return make(3, {"(1,2,3)", "(1,2)"}); }

std::vector<PermGroup> test_groups() {
  return {
      make(1, {}),
      make(3, {}),
      make(2, {"(1,2)"}),
      s3(),
      make(4, {"(1,2)(3,4)"}),
      make(4, {"(1,2,3,4)"}),
      make(4, {"(1,2)(3,4)", "(1,3)(2,4)"}),
      make(4, {"(1,2,3,4)", "(1,3)"}),
      make(4, {"(1,2,3)", "(2,3,4)"}),
      s3_on_five(),
      make(5, {"(1,2,3)(4,5)"}),
      make(5, {"(1,2,3,4,5)"}),
      make(5, {"(1,2,3,4,5)", "(2,5)(3,4)"}),
      make(6, {"(1,2)(3,4)", "(1,2)(5,6)"}),
      make(6, {"(1,2,3)(4,5,6)"}),
      make(6, {"(1,2,3,4,5,6)"}),
      make(6, {"(1,2)(3,4)(5,6)", "(1,3,5)(2,4,6)"}),
      make(6, {"(1,2,3)", "(4,5,6)"}),
      make(7, {"(1,2,3,4,5,6,7)"}),
      make(7, {"(1,2,3,4)(5,6,7)"}),
  };
}

std::vector<PermGroup> abelian_groups() {
  return {
      make(4, {"(1,2)(3,4)"}),
      make(5, {"(1,2,3)(4,5)"}),
      make(6, {"(1,2,3,4,5,6)"}),
      make(6, {"(1,2)(3,4)", "(1,2)(5,6)"}),
      make(6, {"(1,2,3)(4,5,6)"}),
      make(7, {"(1,2,3,4)(5,6,7)"}),
      make(8, {"(1,2)(3,4)", "(1,2)(5,6,7,8)"}),
      make(9, {"(1,2)(3,4)", "(1,2)(5,6)", "(7,8,9)"}),
      make(10, {"(1,2)(3,4,5,6,7,8)", "(9,10)"}),
  };
}

}  // namespace

TEST(TupleOrbits, Examples) {
  EXPECT_EQ(tuple_orbits(PermGroup::trivial(4), 1).orbit_count(), 4u);
  EXPECT_EQ(tuple_orbits(make(4, {"(1,2,3,4)"}), 1).orbit_count(), 1u);
  // diagonal and off-diagonal, from enumerating the 9 pairs
  EXPECT_EQ(tuple_orbits(s3(), 2).orbit_count(), 2u);
  EXPECT_EQ(tuple_orbits(s3(), 3).orbit_count(), 5u);
  EXPECT_EQ(tuple_orbits(s3_on_five(), 2).orbit_count(), 6u);
  EXPECT_EQ(tuple_orbits(s3_on_five(), 3).orbit_count(), 24u);
}

TEST(TupleOrbits, LabelsFollowLeastTuple) {
  auto index = tuple_orbits(s3_on_five(), 2);
  EXPECT_EQ(index.size(), 25u);
  std::uint32_t next = 0;
  for (std::uint64_t code = 0; code < index.size(); ++code) {
    ASSERT_LE(index.label(code), next);
    if (index.label(code) == next) ++next;
  }
  EXPECT_EQ(next, index.orbit_count());
}

TEST(TupleOrbits, MatchDirectOrbitComputation) {
  for (const auto &g : test_groups()) {
    if (g.degree() > 6) continue;
    auto elems = oracle::close_elements(g.degree(), g.generators());
    for (std::size_t k = 1; k <= 3; ++k) {
      auto index = tuple_orbits(g, k);
      auto tuples = oracle::all_tuples(g.degree(), k);
      ASSERT_EQ(index.size(), tuples.size());
      for (const auto &t : tuples) {
        std::set<std::uint64_t> orbit;
        for (const auto &x : elems) orbit.insert(oracle::encode(oracle::image(t, x), g.degree()));
        for (const auto &u : tuples) {
          bool same = orbit.count(oracle::encode(u, g.degree())) > 0;
          ASSERT_EQ(same, index.label_of(t) == index.label_of(u));
        }
      }
    }
  }
}

TEST(TupleOrbits, Caps) {
  EXPECT_THROW(tuple_orbits(PermGroup::trivial(20), 5), CapExceeded);
  EXPECT_THROW(TupleOrbitIndex(PermGroup::trivial(4), 3, 63), CapExceeded);
  EXPECT_NO_THROW(TupleOrbitIndex(PermGroup::trivial(4), 3, 64));
  EXPECT_THROW(tuple_orbits(PermGroup::trivial(4), 0), InputError);
  try {
    TupleOrbitIndex(PermGroup::trivial(10), 3, 500);
    FAIL();
  } catch (const CapExceeded &e) {
    EXPECT_EQ(e.required(), 1000u);
    EXPECT_EQ(e.limit(), 500u);
  }
}

TEST(InKClosure, Examples) {
  auto g = s3_on_five();
  for (const auto &x : elements(g)) EXPECT_TRUE(in_k_closure(g, x, 2));
  EXPECT_TRUE(in_k_closure(g, parse_cycle_notation("(4,5)", 5), 2));
  EXPECT_FALSE(in_k_closure(g, parse_cycle_notation("(4,5)", 5), 3));
  EXPECT_FALSE(in_k_closure(g, parse_cycle_notation("(3,4)", 5), 1));

  const std::uint64_t d[] = {2, 2};
  auto w = pgroup_witness(d, 2);
  EXPECT_TRUE(in_k_closure(w.group, w.tau0, 2));
  EXPECT_FALSE(in_k_closure(w.group, w.tau0, 3));
  EXPECT_THROW(in_k_closure(g, Permutation(4), 2), InputError);
}

TEST(InKClosure, MatchesDefinition) {
  for (const auto &g : test_groups()) {
    if (g.degree() > 5) continue;
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto &x : oracle::symmetric_group(g.degree()))
        ASSERT_EQ(in_k_closure(g, x, k), oracle::in_closure(g.degree(), g.generators(), x, k));
  }
}

TEST(KClosure, WorkedExample) {
  auto c = k_closure(s3_on_five(), 2);
  EXPECT_EQ(c.order(), 12u);
  EXPECT_TRUE(c.same_group(make(5, {"(1,2,3)", "(1,2)", "(4,5)"})));
  auto o = orbits(c).orbits;
  EXPECT_EQ(o, (std::vector<PointSet>{{0, 1, 2}, {3, 4}}));
}

TEST(KClosure, Examples) {
  EXPECT_TRUE(k_closure(s3(), 2).same_group(s3()));
  auto c = k_closure(make(4, {"(1,2)(3,4)"}), 1);
  EXPECT_EQ(c.order(), 4u);
  EXPECT_TRUE(c.same_group(make(4, {"(1,2)", "(3,4)"})));
  // 1-closure of a transitive group is the full symmetric group
  EXPECT_EQ(k_closure(make(6, {"(1,2,3,4,5,6)"}), 1).order(), 720u);
  EXPECT_EQ(k_closure(make(5, {"(1,2,3,4,5)"}), 1).order(), 120u);
}

TEST(KClosure, FrozenOrders) {
  // frozen from oracle::closure_elements
  struct Case {
    PermGroup g;
    std::uint64_t orders[3];
  };
  const Case cases[] = {
      {s3(), {6, 6, 6}},
      {s3_on_five(), {12, 12, 6}},
      {make(4, {"(1,2)(3,4)"}), {4, 2, 2}},
      {make(5, {"(1,2,3)(4,5)"}), {12, 6, 6}},
      {make(6, {"(1,2)(3,4)", "(1,2)(5,6)"}), {8, 8, 4}},
      {make(6, {"(1,2,3)(4,5,6)"}), {36, 3, 3}},
      {make(4, {"(1,2,3,4)"}), {24, 4, 4}},
      {make(6, {"(1,2,3,4,5,6)"}), {720, 6, 6}},
      {make(7, {"(1,2,3,4)(5,6,7)"}), {144, 12, 12}},
      {make(4, {"(1,2)(3,4)", "(1,3)(2,4)"}), {24, 4, 4}},
  };
  for (const auto &c : cases)
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(k_closure(c.g, k).order(), c.orders[k - 1]);
}

TEST(KClosure, MatchesOracle) {
  for (const auto &g : test_groups())
    for (std::size_t k = 1; k <= 3; ++k) {
      auto c = k_closure(g, k);
      auto expected = oracle::closure_elements(g.degree(), g.generators(), k);
      ASSERT_EQ(elements(c), expected) << "degree " << g.degree() << " k " << k;
    }
}

TEST(KClosure, MatchesBruteForce) {
  for (const auto &g : test_groups())
    for (std::size_t k = 1; k <= 3; ++k)
      ASSERT_TRUE(k_closure(g, k).same_group(brute_force_k_closure(g, k)));
  EXPECT_THROW(brute_force_k_closure(PermGroup::trivial(8), 2), CapExceeded);
}

TEST(KClosure, SandwichAndIdempotence) {
  auto groups = test_groups();
  for (const auto &g : abelian_groups()) groups.push_back(g);
  for (const auto &g : groups) {
    PermGroup previous = k_closure(g, 1);
    for (std::size_t k = 2; k <= 4; ++k) {
      if (g.degree() > 8 && k > 2) break;
      auto c = k_closure(g, k);
      ASSERT_TRUE(c.contains_group(g));
      ASSERT_TRUE(previous.contains_group(c));
      ASSERT_TRUE(k_closure(c, k).same_group(c));
      ASSERT_EQ(orbits(c).orbits, orbits(g).orbits);
      previous = c;
    }
  }
}

TEST(KClosure, AbelianClosureIsAbelian) {
  for (const auto &g : abelian_groups())
    for (std::size_t k = 2; k <= 3; ++k) {
      if (g.degree() > 8 && k > 2) continue;
      auto c = k_closure(g, k);
      EXPECT_TRUE(c.is_abelian());
      EXPECT_EQ(prime_divisors(c.order()), prime_divisors(g.order()));
      for (const auto &[p, sylow] : abelian_sylow_subgroups(g)) {
        auto closed = k_closure(sylow, k);
        EXPECT_EQ(prime_divisors(closed.order()), PrimeSet{p});
        const std::uint64_t primes[] = {p};
        auto q = abelian_hall_subgroup(c, primes);
        EXPECT_EQ(orbits(sylow).orbits, orbits(q).orbits);
      }
    }
}

TEST(KClosure, Caps) {
  EXPECT_THROW(k_closure(PermGroup::trivial(17), 2), CapExceeded);
  EXPECT_THROW(k_closure(PermGroup::trivial(13), 3), CapExceeded);
  EXPECT_THROW(k_closure(s3(), 0), InputError);
  Caps wide;
  wide.max_degree_k3 = 16;
  EXPECT_EQ(k_closure(make(13, {"(1,2,3,4,5,6,7,8,9,10,11,12,13)"}), 3, wide).order(), 13u);
  // k = 1 has no degree cap
  EXPECT_EQ(k_closure(PermGroup::trivial(30), 1).order(), 1u);
}

TEST(IsKClosed, Examples) {
  EXPECT_TRUE(is_k_closed(s3(), 2));
  EXPECT_FALSE(is_k_closed(s3_on_five(), 2));
  EXPECT_TRUE(is_k_closed(s3_on_five(), 3));
  EXPECT_FALSE(is_k_closed(make(4, {"(1,2)(3,4)"}), 1));
}

TEST(IsKClosed, AgreesWithOrderComparison) {
  for (const auto &g : test_groups())
    for (std::size_t k = 1; k <= 3; ++k) {
      bool closed = k_closure(g, k).order() == g.order();
      auto with = k_closedness(g, k);
      auto without = k_closedness(g, k, {}, false);
      ASSERT_EQ(with.closed, closed);
      ASSERT_EQ(without.closed, closed);
      ASSERT_FALSE(without.via_shortcut);
      if (!closed) {
        ASSERT_TRUE(without.witness.has_value());
        ASSERT_FALSE(g.contains(*without.witness));
        ASSERT_TRUE(in_k_closure(g, *without.witness, k));
      }
    }
}

TEST(BaseShortcut, Examples) {
  auto z4 = make(4, {"(1,2,3,4)"});
  auto r = closure_via_base_shortcut(z4, 2);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->same_group(z4));
  EXPECT_TRUE(closure_via_base_shortcut(s3(), 3).has_value());
  EXPECT_FALSE(closure_via_base_shortcut(s3(), 2).has_value());
  const std::uint64_t d[] = {2, 2};
  EXPECT_FALSE(closure_via_base_shortcut(pgroup_witness(d, 2).group, 2).has_value());

  auto v = k_closedness(s3_on_five(), 3);
  EXPECT_TRUE(v.closed);
  EXPECT_TRUE(v.via_shortcut);
  EXPECT_EQ(minimal_base_size(s3_on_five()), 2u);
}

TEST(SylowSubgroups, Examples) {
  auto parts = abelian_sylow_subgroups(make(5, {"(1,2,3)(4,5)"}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].prime, 2u);
  EXPECT_TRUE(parts[0].group.same_group(make(5, {"(4,5)"})));
  EXPECT_EQ(parts[1].prime, 3u);
  EXPECT_TRUE(parts[1].group.same_group(make(5, {"(1,2,3)"})));

  auto v4 = make(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto two = abelian_sylow_subgroups(v4);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_TRUE(two[0].group.same_group(v4));

  EXPECT_TRUE(abelian_sylow_subgroups(PermGroup::trivial(3)).empty());
  EXPECT_THROW(abelian_sylow_subgroups(s3()), InputError);
}

TEST(ProductCheck, Examples) {
  for (const auto &g : abelian_groups())
    for (std::size_t k = 2; k <= 3; ++k) {
      auto r = closure_product_check(g, k);
      EXPECT_TRUE(r.passed()) << r.to_text();
      EXPECT_EQ(r.details["left_order"], r.details["right_order"]);
    }
  EXPECT_THROW(closure_product_check(make(5, {"(1,2,3)(4,5)"}), 1), InputError);
  EXPECT_THROW(closure_product_check(s3(), 2), InputError);
}

TEST(ProductCheck, BothSidesMatchOracle) {
  auto g = make(5, {"(1,2,3)(4,5)"});
  auto left = oracle::closure_elements(5, g.generators(), 2);
  auto two = oracle::closure_elements(5, parse_all(5, {"(4,5)"}), 2);
  auto three = oracle::closure_elements(5, parse_all(5, {"(1,2,3)"}), 2);
  std::vector<Permutation> gens(two.begin(), two.end());
  gens.insert(gens.end(), three.begin(), three.end());
  EXPECT_EQ(oracle::close_elements(5, gens), left);
  EXPECT_EQ(left.size(), 6u);
}
