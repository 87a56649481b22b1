#include <gtest/gtest.h>

#include <cmath>

#include "splaylab/balance.hpp"
#include "splaylab/error.hpp"
#include "splaylab/permutation.hpp"

using namespace splaylab;

TEST(Alpha, ParseAndReduce) {
  EXPECT_EQ(Alpha::parse("1/4").to_string(), Alpha(1, 4).to_string());
  const Alpha a = Alpha::parse("0.25");
  EXPECT_EQ(a.num(), 1u);
  EXPECT_EQ(a.den(), 4u);
  const Alpha b(2, 6);
  EXPECT_EQ(b.num(), 1u);
  EXPECT_EQ(b.den(), 3u);
  EXPECT_DOUBLE_EQ(Alpha::parse("0.5").value(), 0.5);
}

TEST(Alpha, RejectsOutOfRange) {
  for (const char* text : {"0", "0.6", "3/4", "1/0", "abc", "-1/4", "0.1234567891"}) {
    try {
      Alpha::parse(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadConfig) << text;
    }
  }
}

TEST(Balance, Rank) {
  const Tree t = bst_of(Permutation{5, 2, 8, 1, 3, 7, 9, 4, 6});
  EXPECT_EQ(rank(t, 1), 1u);
  EXPECT_EQ(rank(t, 9), 9u);
  EXPECT_EQ(rank(t, 5), 5u);
  try {
    rank(t, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKeyNotFound);
  }
}

TEST(Balance, DfSum) {
  const Tree t = gen_perfect_tree(15);
  EXPECT_DOUBLE_EQ(df_sum(t, identity_permutation(15)).value, 14.0);
  const Permutation x = {1, 3};
  EXPECT_NEAR(df_sum(t, x).value, std::log2(3.0), 1e-12);
  const DfSum terms = df_sum(t, identity_permutation(5), true);
  EXPECT_EQ(terms.terms.size(), 4u);
}

TEST(Balance, DfSumOfPerfectPreorderIsLinear) {
  // Per-key DF sum climbs from 1.25 at k = 3 towards about 1.922.
  double lo = 1e9, hi = 0;
  for (int k = 3; k <= 16; ++k) {
    const std::size_t n = (std::size_t{1} << k) - 1;
    const Tree s = gen_perfect_tree(n);
    const double per_n = df_sum(s, preorder(s)).value / static_cast<double>(n);
    EXPECT_LE(per_n, 1.93) << "k=" << k;
    if (k >= 10) {
      lo = std::min(lo, per_n);
      hi = std::max(hi, per_n);
    }
  }
  EXPECT_LE(hi / lo, 1.05);
}

TEST(Balance, WeightBalance) {
  EXPECT_TRUE(is_weight_balanced(gen_perfect_tree(7), Alpha(1, 2)));
  const Tree spine = parse_tree("[1 ∅ [2 ∅ [3]]]");
  EXPECT_FALSE(is_weight_balanced(spine, Alpha(1, 2)));
  EXPECT_TRUE(is_weight_balanced(spine, Alpha(1, 4)));
  EXPECT_TRUE(is_weight_balanced(parse_tree("[1]"), Alpha(1, 2)));
}

TEST(Balance, PerfectTrees) {
  EXPECT_EQ(format_tree(gen_perfect_tree(1)), "[1]");
  EXPECT_EQ(format_tree(gen_perfect_tree(3)), "[2 [1] [3]]");
  EXPECT_EQ(format_tree(gen_perfect_tree(7)), "[4 [2 [1] [3]] [6 [5] [7]]]");
  EXPECT_EQ(height(gen_perfect_tree(1023)), 9);
  EXPECT_EQ(height(Tree{}), -1);
  try {
    gen_perfect_tree(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeNotPerfect);
  }
}

TEST(Balance, RandomTrees) {
  EXPECT_TRUE(gen_random_tree(0, 1).empty());
  EXPECT_EQ(format_tree(gen_random_tree(1, 1)), "[1]");
  EXPECT_EQ(gen_random_tree(16, 42), gen_random_tree(16, 42));
  EXPECT_EQ(gen_random_tree(500, 3).inorder_keys(), identity_permutation(500));
}

TEST(Balance, WeightBalancedGenerator) {
  for (const char* text : {"1/4", "0.3", "1/3", "0.1"}) {
    const Alpha a = Alpha::parse(text);
    for (std::size_t n : {1u, 2u, 10u, 100u, 777u}) {
      const Tree t = gen_weight_balanced_tree(n, a, n * 7);
      EXPECT_EQ(t.size(), n);
      EXPECT_TRUE(t.validate().ok());
      EXPECT_TRUE(is_weight_balanced(t, a)) << text << " n=" << n;
    }
  }
  EXPECT_EQ(gen_weight_balanced_tree(15, Alpha(1, 2), 0), gen_perfect_tree(15));
  const std::vector<std::size_t> sizes = subtree_sizes(gen_perfect_tree(7));
  EXPECT_EQ(sizes[index_of(gen_perfect_tree(7).root())], 7u);
}
