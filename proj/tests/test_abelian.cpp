#include <gtest/gtest.h>

#include <random>

#include "kclosure/abelian.hpp"

using namespace kclosure;
using Orders = std::vector<std::uint64_t>;

TEST(AbelianSpec, DropsOnes) {
  EXPECT_EQ(AbelianSpec({1, 4, 1}).orders(), Orders{4});
  EXPECT_TRUE(AbelianSpec({1, 1}).is_trivial());
  EXPECT_THROW(AbelianSpec({0}), InputError);
}

TEST(PrimaryDecomposition, Examples) {
  using Map = std::map<std::uint64_t, Orders>;
  EXPECT_EQ(primary_decomposition(AbelianSpec({12})), (Map{{2, {4}}, {3, {3}}}));
  EXPECT_EQ(primary_decomposition(AbelianSpec({2, 4, 3})), (Map{{2, {2, 4}}, {3, {3}}}));
  EXPECT_TRUE(primary_decomposition(AbelianSpec{}).empty());
}

TEST(InvariantFactors, Examples) {
  EXPECT_EQ(invariant_factors(AbelianSpec({2, 4, 3})).d, (Orders{2, 12}));
  EXPECT_EQ(invariant_factors(AbelianSpec({6})).d, Orders{6});
  EXPECT_EQ(invariant_factors(AbelianSpec({2, 2, 2})).d, (Orders{2, 2, 2}));
  EXPECT_EQ(invariant_factors(AbelianSpec({6, 10, 15})).d, (Orders{30, 30}));
  EXPECT_TRUE(invariant_factors(AbelianSpec{}).d.empty());
}

TEST(Counts, Examples) {
  EXPECT_EQ(n_of(AbelianSpec({2, 4, 3})), 2u);
  EXPECT_EQ(n_of(AbelianSpec({12})), 1u);
  EXPECT_EQ(n_of(AbelianSpec({2, 2})), 2u);
  EXPECT_EQ(n_of(AbelianSpec{}), 0u);
  EXPECT_EQ(capital_N(AbelianSpec({12})), 2u);
  EXPECT_EQ(capital_N(AbelianSpec({2, 4, 3})), 3u);
  EXPECT_EQ(capital_N(AbelianSpec({8})), 1u);
  EXPECT_EQ(capital_N(AbelianSpec{}), 0u);
}

TEST(PiPart, Examples) {
  EXPECT_EQ(pi_part(12, {2}), 4u);
  EXPECT_EQ(pi_part(12, {2, 3}), 12u);
  EXPECT_EQ(pi_part(12, {5}), 1u);
  EXPECT_EQ(pi_part(7, {}), 1u);
}

TEST(Factorize, LargeValues) {
  // 1000003 and 1000033 are prime
  EXPECT_EQ(factorize(std::uint64_t{1000003} * 1000033),
            (std::map<std::uint64_t, unsigned>{{1000003, 1}, {1000033, 1}}));
  EXPECT_EQ(factorize(std::uint64_t{1} << 62), (std::map<std::uint64_t, unsigned>{{2, 62}}));
}

TEST(ParseOrders, Forms) {
  EXPECT_EQ(parse_orders("2,4,3").orders(), (Orders{2, 4, 3}));
  EXPECT_EQ(parse_orders(" 9 , 3").orders(), (Orders{9, 3}));
  EXPECT_THROW(parse_orders("2,,3"), ParseError);
  EXPECT_THROW(parse_orders("2,"), ParseError);
  EXPECT_THROW(parse_orders("a"), ParseError);
  EXPECT_THROW(parse_orders("0"), InputError);
}

TEST(Property, InvariantFactorLaws) {
  std::mt19937_64 rng(7);
  const std::uint64_t pool[] = {2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 25, 27, 30, 36};
  for (int trial = 0; trial < 500; ++trial) {
    Orders orders;
    std::size_t r = rng() % 5;
    for (std::size_t i = 0; i < r; ++i) orders.push_back(pool[rng() % std::size(pool)]);
    AbelianSpec spec(orders);
    auto d = invariant_factors(spec).d;

    // divisibility chain with d_1 > 1
    if (!d.empty()) {
      ASSERT_GT(d.front(), 1u);
    }
    for (std::size_t i = 0; i + 1 < d.size(); ++i) ASSERT_EQ(d[i + 1] % d[i], 0u);

    // order preserved
    std::uint64_t prod = 1;
    for (auto x : d) prod *= x;
    ASSERT_EQ(prod, spec.order());

    // idempotent
    ASSERT_EQ(invariant_factors(AbelianSpec(d)).d, d);

    // n(G) = max_p n(G_p); n <= N; p-groups have N = n
    auto primary = primary_decomposition(spec);
    std::size_t max_len = 0;
    for (const auto &[p, list] : primary) max_len = std::max(max_len, list.size());
    ASSERT_EQ(n_of(spec), max_len);
    ASSERT_LE(n_of(spec), capital_N(spec));
    if (primary.size() <= 1) {
      ASSERT_EQ(n_of(spec), capital_N(spec));
    }

    // isomorphism invariance: shuffle and re-split the primary parts
    Orders flat;
    for (const auto &[p, list] : primary) flat.insert(flat.end(), list.begin(), list.end());
    std::shuffle(flat.begin(), flat.end(), rng);
    ASSERT_EQ(invariant_factors(AbelianSpec(flat)).d, d);
  }
}
