#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ldkep/ld_context.hpp"
#include "ldkep/treeword.hpp"

using namespace ldkep;

TEST_CASE("construction and leaf walk") {
  TreeWord t = TreeWord::node(0, TreeWord::node(0, TreeWord::leaf(0), TreeWord::leaf(1)),
                              TreeWord::leaf(2));
  CHECK(t.leaf_count() == 3);
  CHECK(t.leaves() == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_FALSE(t.is_leaf());
  CHECK(t.left().leaf_count() == 2);
}

TEST_CASE("text codec") {
  CHECK(TreeWord::leaf(1).to_text() == "g2");
  // ((b . c) . (a . b)) . b over the basis order (b, c, a)
  TreeWord fig = TreeWord::node(
      0,
      TreeWord::node(0, TreeWord::node(0, TreeWord::leaf(0), TreeWord::leaf(1)),
                     TreeWord::node(0, TreeWord::leaf(2), TreeWord::leaf(0))),
      TreeWord::leaf(0));
  CHECK(fig.to_text() == "(op1 (op1 (op1 g1 g2) (op1 g3 g1)) g1)");
  CHECK(TreeWord::parse(fig.to_text()) == fig);
  CHECK_THROWS_AS(TreeWord::parse("(op1 g1"), std::invalid_argument);
  CHECK_THROWS_AS(TreeWord::parse("(op1 g1 g2) junk"), std::invalid_argument);
  CHECK_THROWS_AS(TreeWord::parse("g0"), std::invalid_argument);
}

TEST_CASE("round trip over random trees") {
  Rng rng(2718);
  for (int t = 0; t < 500; ++t) {
    TreeWord tree = random_tree(rng, 1 + rng.below(9), 3, {0, 1});
    CHECK(TreeWord::parse(tree.to_text()) == tree);
  }
}

TEST_CASE("random trees are deterministic and cover the shapes") {
  Rng a(99), b(99);
  CHECK(random_tree(a, 6, 2, {0}) == random_tree(b, 6, 2, {0}));
  CHECK(random_tree(a, 1, 4, {}).is_leaf());

  std::set<std::string> shapes;
  Rng rng(100);
  for (int t = 0; t < 10000 && shapes.size() < 5; ++t) {
    TreeWord tree = random_tree(rng, 4, 1, {0});
    shapes.insert(tree.to_text());
  }
  CHECK(shapes.size() == 5);  // all binary shapes with four leaves
}

TEST_CASE("evaluation in a conjugacy context matches direct products") {
  LDContext ctx = LDContext::group_conjugacy(PermGroup::symmetric(3));
  Permutation b = Permutation::transposition(3, 1, 2);
  Permutation c = Permutation::transposition(3, 1, 3);
  Permutation a = Permutation::transposition(3, 2, 3);
  SubmagmaBasis basis{{Element(b), Element(c), Element(a)}, OpSide::Both};
  // ((b*c) * (a*b)) * b, parenthesized by hand
  auto star = [&](const Permutation& x, const Permutation& y) { return x.inverse() * y * x; };
  Permutation expect = star(star(star(b, c), star(a, b)), b);
  TreeWord tree = TreeWord::node(
      0,
      TreeWord::node(0, TreeWord::node(0, TreeWord::leaf(0), TreeWord::leaf(1)),
                     TreeWord::node(0, TreeWord::leaf(2), TreeWord::leaf(0))),
      TreeWord::leaf(0));
  CHECK(ctx.equal(eval_tree(tree, basis, ctx), Element(expect)));

  CHECK(ctx.equal(eval_tree(TreeWord::leaf(0), basis, ctx), Element(b)));
  CHECK_THROWS_AS(eval_tree(TreeWord::leaf(5), basis, ctx), std::out_of_range);
}

TEST_CASE("mixed operation labels evaluate") {
  // ((s3 *2 s3) *4 s1) *1 (s2 *2 s1) with four central-twist operations
  PermGroup c8 = PermGroup::cyclic(8);
  std::vector<Permutation> twists;
  std::vector<std::string> names;
  for (unsigned j = 1; j <= 4; ++j) {
    twists.push_back(*c8.element_by_name("r" + std::to_string(j)));
    names.push_back("r" + std::to_string(j));
  }
  LDContext ctx = LDContext::central_twist(c8, twists, names);
  Rng rng(5);
  SubmagmaBasis basis{{ctx.sample(rng), ctx.sample(rng), ctx.sample(rng)}, OpSide::Both};
  TreeWord tree = TreeWord::node(
      0, TreeWord::node(3, TreeWord::node(1, TreeWord::leaf(2), TreeWord::leaf(2)),
                        TreeWord::leaf(0)),
      TreeWord::node(1, TreeWord::leaf(1), TreeWord::leaf(0)));
  Element direct = ctx.apply(
      0,
      ctx.apply(3, ctx.apply(1, basis.elements[2], basis.elements[2]), basis.elements[0]),
      ctx.apply(1, basis.elements[1], basis.elements[0]));
  CHECK(ctx.equal(eval_tree(tree, basis, ctx), direct));
}

TEST_CASE("left multiplication acts leaf by leaf") {
  // Laver platform: x * eval(T) = eval(T with every leaf hit by x), exhaustive
  // over small trees
  LDContext laver = LDContext::laver_context(3);
  SubmagmaBasis basis{{Element(std::uint32_t{1}), Element(std::uint32_t{2})}, OpSide::Both};
  Rng rng(7);
  std::vector<TreeWord> trees;
  for (int t = 0; t < 40; ++t) trees.push_back(random_tree(rng, 1 + rng.below(3), 2, {0}));
  for (std::uint32_t x = 1; x <= 8; ++x) {
    for (const TreeWord& tree : trees) {
      Element lhs = laver.apply(0, Element(x), eval_tree(tree, basis, laver));
      std::vector<Element> hit;
      for (std::uint32_t g : tree.leaves())
        hit.push_back(laver.apply(0, Element(x), basis.elements[g]));
      CHECK(laver.equal(lhs, eval_tree_with_leaves(tree, hit, laver)));
    }
  }
}

TEST_CASE("cross-pool evaluation commutes with left multiplication") {
  // e *_alpha T_B(e_1..e_l) = T_B(e *_alpha e_1, ..., e *_alpha e_l)
  LDContext ctx = LDContext::parabolic_partial_multi_ld(
      7, 3, 4, {{BraidWord({1, 2}), BraidWord({3})}}, {{BraidWord({5}), BraidWord({5, 6})}});
  std::vector<std::size_t> b_ops = ctx.side_ops(OpSide::B);
  std::size_t alpha = ctx.side_ops(OpSide::A)[0];
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    SubmagmaBasis basis{{ctx.sample(rng), ctx.sample(rng)}, OpSide::B};
    TreeWord tree = random_tree(rng, 1 + rng.below(4), 2, b_ops);
    Element e = ctx.sample(rng);
    Element lhs = ctx.apply(alpha, e, eval_tree(tree, basis, ctx));
    std::vector<Element> hit;
    for (std::uint32_t g : tree.leaves()) hit.push_back(ctx.apply(alpha, e, basis.elements[g]));
    Element rhs = eval_tree_with_leaves(tree, hit, ctx);
    CHECK(ctx.equal(lhs, rhs));
  }
}

TEST_CASE("side labels are enforced") {
  LDContext ctx = LDContext::parabolic_partial_multi_ld(
      7, 3, 4, {{BraidWord(), BraidWord()}}, {{BraidWord(), BraidWord()}});
  SubmagmaBasis basis_a{{Element(BraidValue::from_word(BraidWord({1})))}, OpSide::A};
  std::size_t beta = ctx.side_ops(OpSide::B)[0];
  TreeWord wrong = TreeWord::node(static_cast<std::uint32_t>(beta), TreeWord::leaf(0),
                                  TreeWord::leaf(0));
  CHECK_THROWS_AS(eval_tree(wrong, basis_a, ctx), std::invalid_argument);
  // leaf count must match exactly when substituting
  CHECK_THROWS_AS(eval_tree_with_leaves(wrong, {basis_a.elements[0]}, ctx),
                  std::invalid_argument);
}
