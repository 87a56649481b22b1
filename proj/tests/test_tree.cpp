#include <gtest/gtest.h>

#include "oracles.hpp"
#include "splaylab/error.hpp"
#include "splaylab/permutation.hpp"
#include "splaylab/rng.hpp"
#include "splaylab/tree.hpp"

using namespace splaylab;

namespace {

NodeHandle find(const Tree& t, Key k) {
  NodeHandle h = t.search(k);
  EXPECT_NE(h, kNone) << "key " << k;
  return h;
}

}  // namespace

TEST(Tree, InsertBuildsLeaves) {
  Tree t;
  t.insert(2);
  EXPECT_EQ(format_tree(t), "[2]");
  t.insert(1);
  t.insert(3);
  EXPECT_EQ(format_tree(t), "[2 [1] [3]]");

  Tree spine;
  for (Key k : {1, 2, 3}) spine.insert(k);
  EXPECT_EQ(format_tree(spine), "[1 ∅ [2 ∅ [3]]]");
}

TEST(Tree, InsertRejectsDuplicates) {
  Tree t = parse_tree("[2 [1] [3]]");
  try {
    t.insert(3);
    FAIL() << "expected DuplicateKey";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateKey);
  }
}

TEST(Tree, Search) {
  Tree t = parse_tree("[2 [1] [3]]");
  EXPECT_EQ(t.key(t.search(3)), 3);
  EXPECT_EQ(t.search(5), kNone);
  EXPECT_EQ(Tree{}.search(1), kNone);
}

TEST(Tree, RotateBothSidesAndUndo) {
  Tree t = parse_tree("[2 [1] [3]]");
  const Tree before = t;
  NodeHandle one = find(t, 1);
  NodeHandle two = find(t, 2);
  t.rotate(one);
  EXPECT_EQ(format_tree(t), "[1 ∅ [2 ∅ [3]]]");
  EXPECT_TRUE(t.validate().ok());
  t.rotate(two);
  EXPECT_EQ(t, before);

  Tree m = parse_tree("[1 ∅ [2]]");
  m.rotate(find(m, 2));
  EXPECT_EQ(format_tree(m), "[2 [1]]");
}

TEST(Tree, RotateAtRootThrows) {
  Tree t = parse_tree("[2 [1] [3]]");
  try {
    t.rotate(t.root());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRotateAtRoot);
  }
}

TEST(Tree, Depths) {
  Tree t = parse_tree("[2 [1] [3]]");
  EXPECT_EQ(t.depths(t.root()), (Depths{0, 0, 0}));
  EXPECT_EQ(t.depths(find(t, 3)), (Depths{1, 0, 1}));
  Tree spine = parse_tree("[3 [2 [1]]]");
  EXPECT_EQ(spine.depths(find(spine, 1)), (Depths{2, 2, 0}));
}

TEST(Tree, Lca) {
  Tree t = parse_tree("[2 [1] [3]]");
  EXPECT_EQ(t.key(t.lca(find(t, 1), find(t, 3))), 2);
  EXPECT_EQ(t.lca(find(t, 1), find(t, 1)), find(t, 1));
  Tree spine = parse_tree("[1 ∅ [2 ∅ [3]]]");
  EXPECT_EQ(spine.key(spine.lca(find(spine, 2), find(spine, 3))), 2);
}

TEST(Tree, LcaMatchesKeyIntervalRule) {
  // In a BST the LCA of a < b is the first node on the root path whose key
  // lies in [a, b].
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Tree t = bst_of(random_permutation(40, rng));
    for (Key a = 1; a <= 40; a += 3) {
      for (Key b = a; b <= 40; b += 5) {
        NodeHandle cur = t.root();
        while (t.key(cur) < a || t.key(cur) > b) cur = t.key(cur) < a ? t.right(cur) : t.left(cur);
        EXPECT_EQ(t.lca(find(t, a), find(t, b)), cur);
      }
    }
  }
}

TEST(Tree, ValidateDetectsCorruption) {
  EXPECT_TRUE(parse_tree("[2 [1] [3]]").validate().ok());

  // Left child 3 under key 2.
  std::vector<Node> bad_order = {{2, NodeHandle{1}, kNone, kNone}, {3, kNone, kNone, NodeHandle{0}}};
  EXPECT_EQ(Tree::from_nodes(bad_order, NodeHandle{0}).validate().kind,
            ValidationReport::Kind::kSymmetricOrder);

  // Child 1 claims no parent.
  std::vector<Node> stale = {{2, NodeHandle{1}, kNone, kNone}, {1, kNone, kNone, kNone}};
  EXPECT_EQ(Tree::from_nodes(stale, NodeHandle{0}).validate().kind,
            ValidationReport::Kind::kParentLink);

  std::vector<Node> dangling = {{2, NodeHandle{7}, kNone, kNone}};
  EXPECT_EQ(Tree::from_nodes(dangling, NodeHandle{0}).validate().kind,
            ValidationReport::Kind::kDanglingHandle);
}

TEST(Tree, ParseFormatRoundTrip) {
  EXPECT_TRUE(parse_tree("∅").empty());
  EXPECT_EQ(format_tree(Tree{}), "∅");
  for (const char* text : {"[1 ∅ [2]]", "[2 [1] [3]]", "[5 [3 [1 ∅ [2]] [4]] [8 ∅ [9]]]"}) {
    EXPECT_EQ(format_tree(parse_tree(text)), text);
  }
  EXPECT_EQ(parse_tree("[2 [1] [3]]").size(), 3u);
}

TEST(Tree, ParseErrors) {
  auto code_of = [](const char* text) {
    try {
      parse_tree(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kBadConfig;
  };
  EXPECT_EQ(code_of("[2 [1]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("[x]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("[2] [3]"), ErrorCode::kSyntaxError);
  EXPECT_EQ(code_of("[2 [3]]"), ErrorCode::kSymmetricOrderViolation);
}

TEST(Tree, DeepSpineIsHandledIteratively) {
  const Key n = 200000;
  Tree t = bst_of(identity_permutation(n));
  EXPECT_TRUE(t.validate().ok());
  EXPECT_EQ(t.depths(t.search(n)).depth, static_cast<std::size_t>(n - 1));
  EXPECT_EQ(parse_tree(format_tree(t)), t);
}

TEST(Tree, InsertMatchesNaiveTree) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Permutation p = random_permutation(1 + trial, rng);
    Tree t;
    for (Key k : p) t.insert(k);
    EXPECT_EQ(format_tree(t), oracle::bst_literal(p));
    EXPECT_EQ(t.inorder_keys(), identity_permutation(p.size()));
  }
}
