#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ldkep/ld_context.hpp"
#include "ldkep/rng.hpp"

namespace ldkep {

// Planar rooted binary tree with operation-labelled internal nodes and
// generator-labelled leaves: an iterated magma product with its full
// parenthesization. Immutable; copies share structure.
class TreeWord {
 public:
  TreeWord() = default;  // empty; not a valid tree until assigned

  static TreeWord leaf(std::uint32_t generator);  // 0-based index into a basis
  static TreeWord node(std::uint32_t op, TreeWord left, TreeWord right);

  bool valid() const { return impl_ != nullptr; }
  bool is_leaf() const;
  std::uint32_t generator() const;  // leaf only
  std::uint32_t op() const;         // node only
  TreeWord left() const;
  TreeWord right() const;
  std::size_t leaf_count() const;

  // Leaf generator indices in left-to-right order.
  std::vector<std::uint32_t> leaves() const;

  // Prefix text: leaf `g<i>`, node `(op<j> <left> <right>)`, 1-based labels.
  std::string to_text() const;
  static TreeWord parse(const std::string& text);

  bool operator==(const TreeWord& other) const;

 private:
  struct Impl {
    bool leaf;
    std::uint32_t label;
    std::shared_ptr<const Impl> l, r;
    std::size_t leaves;
  };
  std::shared_ptr<const Impl> impl_;
};

// Public basis of a submagma: the elements the tree's generator labels refer
// to, together with the operation pool its internal labels must come from.
struct SubmagmaBasis {
  std::vector<Element> elements;
  OpSide side = OpSide::Both;
};

// Bottom-up fold applying the labelled operation at each node. Ops must
// belong to the basis's side of the context.
Element eval_tree(const TreeWord& tree, const SubmagmaBasis& basis, const LDContext& ctx);

// Same fold with the leaves replaced, position by position, by the supplied
// elements (the receiving side of both protocols).
Element eval_tree_with_leaves(const TreeWord& tree, const std::vector<Element>& leaf_values,
                              const LDContext& ctx);

// Deterministic tree with `leaf_count` leaves: shapes from uniform recursive
// splitting, leaf labels uniform over the basis, op labels uniform over the
// given list.
TreeWord random_tree(Rng& rng, std::size_t leaf_count, std::size_t basis_size,
                     const std::vector<std::size_t>& op_indices);

}  // namespace ldkep
