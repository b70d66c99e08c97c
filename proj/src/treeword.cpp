#include "ldkep/treeword.hpp"

#include <stdexcept>

namespace ldkep {

TreeWord TreeWord::leaf(std::uint32_t generator) {
  TreeWord t;
  t.impl_ = std::make_shared<Impl>(Impl{true, generator, nullptr, nullptr, 1});
  return t;
}

TreeWord TreeWord::node(std::uint32_t op, TreeWord left, TreeWord right) {
  if (!left.valid() || !right.valid()) throw std::invalid_argument("node needs two subtrees");
  TreeWord t;
  std::size_t leaves = left.leaf_count() + right.leaf_count();
  t.impl_ = std::make_shared<Impl>(Impl{false, op, left.impl_, right.impl_, leaves});
  return t;
}

bool TreeWord::is_leaf() const { return impl_->leaf; }
std::uint32_t TreeWord::generator() const {
  if (!impl_->leaf) throw std::logic_error("not a leaf");
  return impl_->label;
}
std::uint32_t TreeWord::op() const {
  if (impl_->leaf) throw std::logic_error("not an internal node");
  return impl_->label;
}
TreeWord TreeWord::left() const {
  TreeWord t;
  t.impl_ = impl_->l;
  return t;
}
TreeWord TreeWord::right() const {
  TreeWord t;
  t.impl_ = impl_->r;
  return t;
}
std::size_t TreeWord::leaf_count() const { return impl_ ? impl_->leaves : 0; }

std::vector<std::uint32_t> TreeWord::leaves() const {
  std::vector<std::uint32_t> out;
  out.reserve(leaf_count());
  auto walk = [&](auto&& self, const Impl* n) -> void {
    if (n->leaf) { out.push_back(n->label); return; }
    self(self, n->l.get());
    self(self, n->r.get());
  };
  walk(walk, impl_.get());
  return out;
}

std::string TreeWord::to_text() const {
  std::string out;
  auto walk = [&](auto&& self, const Impl* n) -> void {
    if (n->leaf) { out += "g" + std::to_string(n->label + 1); return; }
    out += "(op" + std::to_string(n->label + 1) + " ";
    self(self, n->l.get());
    out += ' ';
    self(self, n->r.get());
    out += ')';
  };
  walk(walk, impl_.get());
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("tree syntax error at position " + std::to_string(pos) + ": " + what);
  }
  void skip_spaces() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  std::uint32_t number() {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) fail("expected a number");
    unsigned long v = std::stoul(text.substr(start, pos - start));
    if (v < 1 || v > 1000000) fail("label out of range");
    return static_cast<std::uint32_t>(v - 1);
  }
  void expect(char c) {
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  TreeWord tree() {
    skip_spaces();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == 'g') {
      ++pos;
      return TreeWord::leaf(number());
    }
    expect('(');
    if (text.compare(pos, 2, "op") != 0) fail("expected 'op'");
    pos += 2;
    std::uint32_t op = number();
    expect(' ');
    TreeWord l = tree();
    skip_spaces();
    TreeWord r = tree();
    skip_spaces();
    expect(')');
    return TreeWord::node(op, std::move(l), std::move(r));
  }
};

}  // namespace

TreeWord TreeWord::parse(const std::string& text) {
  Parser p{text};
  TreeWord t = p.tree();
  p.skip_spaces();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

bool TreeWord::operator==(const TreeWord& other) const {
  auto eq = [](auto&& self, const Impl* a, const Impl* b) -> bool {
    if (a == b) return true;
    if (a->leaf != b->leaf || a->label != b->label) return false;
    if (a->leaf) return true;
    return self(self, a->l.get(), b->l.get()) && self(self, a->r.get(), b->r.get());
  };
  if (!impl_ || !other.impl_) return impl_ == other.impl_;
  return eq(eq, impl_.get(), other.impl_.get());
}

namespace {

void check_side(const LDContext& ctx, std::uint32_t op, OpSide side) {
  if (op >= ctx.op_count()) throw std::out_of_range("op label out of range");
  OpSide s = ctx.op(op).side;
  if (side != OpSide::Both && s != OpSide::Both && s != side)
    throw std::invalid_argument("op '" + ctx.op(op).name + "' is not on the basis side");
}

}  // namespace

Element eval_tree(const TreeWord& tree, const SubmagmaBasis& basis, const LDContext& ctx) {
  if (!tree.valid()) throw std::invalid_argument("empty tree");
  if (tree.is_leaf()) {
    if (tree.generator() >= basis.elements.size())
      throw std::out_of_range("leaf label out of range");
    return basis.elements[tree.generator()];
  }
  check_side(ctx, tree.op(), basis.side);
  Element l = eval_tree(tree.left(), basis, ctx);
  Element r = eval_tree(tree.right(), basis, ctx);
  return ctx.apply(tree.op(), l, r);
}

namespace {

Element eval_with_leaves_walk(const TreeWord& tree, const std::vector<Element>& leaf_values,
                              std::size_t& next, const LDContext& ctx) {
  if (tree.is_leaf()) return leaf_values[next++];
  Element l = eval_with_leaves_walk(tree.left(), leaf_values, next, ctx);
  Element r = eval_with_leaves_walk(tree.right(), leaf_values, next, ctx);
  return ctx.apply(tree.op(), l, r);
}

}  // namespace

Element eval_tree_with_leaves(const TreeWord& tree, const std::vector<Element>& leaf_values,
                              const LDContext& ctx) {
  if (!tree.valid()) throw std::invalid_argument("empty tree");
  if (leaf_values.size() != tree.leaf_count())
    throw std::invalid_argument("leaf value count mismatch");
  std::size_t next = 0;
  return eval_with_leaves_walk(tree, leaf_values, next, ctx);
}

TreeWord random_tree(Rng& rng, std::size_t leaf_count, std::size_t basis_size,
                     const std::vector<std::size_t>& op_indices) {
  if (leaf_count < 1) throw std::invalid_argument("need at least one leaf");
  if (basis_size < 1) throw std::invalid_argument("need a non-empty basis");
  if (leaf_count > 1 && op_indices.empty()) throw std::invalid_argument("need at least one op");
  if (leaf_count == 1) return TreeWord::leaf(static_cast<std::uint32_t>(rng.below(basis_size)));
  std::size_t left = 1 + rng.below(leaf_count - 1);
  std::uint32_t op = static_cast<std::uint32_t>(op_indices[rng.below(op_indices.size())]);
  TreeWord l = random_tree(rng, left, basis_size, op_indices);
  TreeWord r = random_tree(rng, leaf_count - left, basis_size, op_indices);
  return TreeWord::node(op, std::move(l), std::move(r));
}

}  // namespace ldkep
