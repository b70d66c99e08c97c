#include "ldkep/perm_group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ldkep {

namespace {

std::vector<Permutation> closure(unsigned degree, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen;
  std::vector<Permutation> queue;
  Permutation id(degree);
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Permutation cur = queue[head];
    for (const Permutation& g : gens) {
      Permutation next = cur * g;
      if (seen.insert(next).second) {
        queue.push_back(next);
        if (seen.size() > 200000) throw std::runtime_error("group closure too large");
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

void PermGroup::close_and_sort() {
  elements_ = closure(degree_, generators_);
  names_.emplace("e", identity());
}

const Permutation& PermGroup::identity() const {
  // sorted order puts the identity first
  return elements_.front();
}

PermGroup PermGroup::symmetric(unsigned degree) {
  if (degree < 1 || degree > 8) throw std::invalid_argument("symmetric degree must be 1..8");
  PermGroup g;
  g.degree_ = degree;
  g.kind_ = "symmetric";
  for (unsigned i = 1; i < degree; ++i)
    g.generators_.push_back(Permutation::transposition(degree, i, i + 1));
  if (degree == 1) g.generators_.push_back(Permutation(1));
  g.close_and_sort();
  return g;
}

PermGroup PermGroup::dihedral(unsigned order) {
  if (order < 4 || order % 2 != 0 || order > 100)
    throw std::invalid_argument("dihedral order must be even and 4..100");
  unsigned k = order / 2;
  PermGroup g;
  g.degree_ = k;
  g.kind_ = "dihedral";
  std::vector<std::uint8_t> rot(k);
  for (unsigned i = 0; i < k; ++i) rot[i] = static_cast<std::uint8_t>((i + 1) % k + 1);
  std::vector<std::uint8_t> ref(k);
  for (unsigned i = 0; i < k; ++i) ref[i] = static_cast<std::uint8_t>(k - i);
  Permutation r{std::vector<std::uint8_t>(rot)};
  Permutation s{std::vector<std::uint8_t>(ref)};
  g.generators_ = {r, s};
  g.close_and_sort();
  Permutation power(k);
  for (unsigned j = 0; j < k; ++j) {
    g.names_.emplace("r" + std::to_string(j), power);
    g.names_.emplace("s" + std::to_string(j), s * power);
    power = r * power;
  }
  return g;
}

PermGroup PermGroup::quaternion() {
  // Regular representation of the unit quaternions {1,-1,i,-i,j,-j,k,-k}.
  // Element encoding: index 2*axis + (negative ? 1 : 0), axes 0..3 = 1,i,j,k.
  auto mul = [](unsigned a, unsigned b) -> unsigned {
    unsigned ax = a / 2, bx = b / 2;
    bool neg = ((a ^ b) & 1) != 0;
    static const unsigned axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // sign of the axis product: +1 on the first row/column, i*i = -1, and the
    // cyclic rule ij=k, jk=i, ki=j with anticommutation.
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    if (sign[ax][bx] < 0) neg = !neg;
    return 2 * axis[ax][bx] + (neg ? 1u : 0u);
  };
  PermGroup g;
  g.degree_ = 8;
  g.kind_ = "quaternion";
  std::vector<Permutation> all;
  for (unsigned a = 0; a < 8; ++a) {
    std::vector<std::uint8_t> img(8);
    for (unsigned x = 0; x < 8; ++x) img[x] = static_cast<std::uint8_t>(mul(a, x) + 1);
    all.emplace_back(std::move(img));
  }
  g.generators_ = {all[2], all[4]};  // i and j generate
  g.close_and_sort();
  static const char* kNames[8] = {"e", "m1", "i", "mi", "j", "mj", "k", "mk"};
  for (unsigned a = 0; a < 8; ++a) g.names_.emplace(kNames[a], all[a]);
  return g;
}

PermGroup PermGroup::cyclic(unsigned order) {
  if (order < 1 || order > 100) throw std::invalid_argument("cyclic order must be 1..100");
  PermGroup g;
  g.degree_ = order;
  g.kind_ = "cyclic";
  std::vector<std::uint8_t> rot(order);
  for (unsigned i = 0; i < order; ++i) rot[i] = static_cast<std::uint8_t>((i + 1) % order + 1);
  Permutation r{std::vector<std::uint8_t>(rot)};
  g.generators_ = {r};
  g.close_and_sort();
  Permutation power(order);
  for (unsigned j = 0; j < order; ++j) {
    g.names_.emplace("r" + std::to_string(j), power);
    power = r * power;
  }
  return g;
}

PermGroup PermGroup::generated(unsigned degree, std::vector<Permutation> gens, std::string kind) {
  PermGroup g;
  g.degree_ = degree;
  g.kind_ = std::move(kind);
  g.generators_ = std::move(gens);
  g.close_and_sort();
  return g;
}

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::vector<Permutation> PermGroup::center() const {
  std::vector<Permutation> out;
  for (const Permutation& x : elements_) {
    bool central = true;
    for (const Permutation& g : generators_)
      if (!(x * g == g * x)) { central = false; break; }
    if (central) out.push_back(x);
  }
  return out;
}

std::vector<Permutation> PermGroup::young_subgroup(const std::vector<unsigned>& composition) const {
  unsigned total = 0;
  for (unsigned c : composition) total += c;
  if (total != degree_) throw std::invalid_argument("composition must sum to the degree");
  std::vector<Permutation> gens;
  unsigned base = 0;
  for (unsigned c : composition) {
    for (unsigned i = 1; i < c; ++i)
      gens.push_back(Permutation::transposition(degree_, base + i, base + i + 1));
    base += c;
  }
  if (gens.empty()) return {Permutation(degree_)};
  return closure(degree_, gens);
}

std::vector<Permutation> PermGroup::rotation_subgroup() const {
  if (kind_ != "dihedral") throw std::invalid_argument("rotation subgroup needs a dihedral group");
  std::vector<Permutation> gens = {generators_[0]};
  return closure(degree_, gens);
}

std::optional<Permutation> PermGroup::element_by_name(const std::string& name) const {
  auto it = names_.find(name);
  if (it != names_.end()) return it->second;
  return std::nullopt;
}

std::string PermGroup::name_of(const Permutation& p) const {
  for (const auto& [name, q] : names_)
    if (q == p) return name;
  return "(" + p.to_text() + ")";
}

std::vector<Permutation> SubgroupSpec::resolve(const PermGroup& group) const {
  switch (kind) {
    case Kind::Whole: return group.elements();
    case Kind::Trivial: return {group.identity()};
    case Kind::Center: return group.center();
    case Kind::Young: return group.young_subgroup(composition);
    case Kind::Rotations: return group.rotation_subgroup();
  }
  throw std::logic_error("unreachable");
}

std::string SubgroupSpec::to_text() const {
  switch (kind) {
    case Kind::Whole: return "whole";
    case Kind::Trivial: return "trivial";
    case Kind::Center: return "center";
    case Kind::Rotations: return "rotations";
    case Kind::Young: {
      std::string out = "young:";
      for (std::size_t i = 0; i < composition.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(composition[i]);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace ldkep
