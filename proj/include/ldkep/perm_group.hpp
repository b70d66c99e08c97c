#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldkep/permutation.hpp"

namespace ldkep {

// Finite permutation group, fully enumerated (desk scale). Elements are kept
// sorted by image sequence, so enumeration order is deterministic and the
// identity always comes first.
class PermGroup {
 public:
  static PermGroup symmetric(unsigned degree);
  static PermGroup dihedral(unsigned order);  // order = 2k, acting on k points
  static PermGroup quaternion();              // regular representation, degree 8
  static PermGroup cyclic(unsigned order);
  static PermGroup generated(unsigned degree, std::vector<Permutation> gens,
                             std::string kind);

  unsigned degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Permutation& identity() const;
  const std::string& kind() const { return kind_; }

  bool contains(const Permutation& p) const;
  std::vector<Permutation> center() const;

  // Subgroup fixing the consecutive blocks of a composition of the degree,
  // e.g. {3,2} in S_5 gives S_3 x S_2. Only meaningful for the full symmetric
  // group but computed generically.
  std::vector<Permutation> young_subgroup(const std::vector<unsigned>& composition) const;

  // Index-2 cyclic subgroup of a dihedral group.
  std::vector<Permutation> rotation_subgroup() const;

  // Named elements for config files: "e" everywhere; dihedral r<j>/s<j>;
  // quaternion e,m1,i,mi,j,mj,k,mk; cyclic r<j>.
  std::optional<Permutation> element_by_name(const std::string& name) const;
  std::string name_of(const Permutation& p) const;  // falls back to images

 private:
  PermGroup() = default;
  void close_and_sort();

  unsigned degree_ = 0;
  std::string kind_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::map<std::string, Permutation> names_;
};

// Subgroup selector used by problem instances and the CLI.
struct SubgroupSpec {
  enum class Kind { Whole, Trivial, Center, Young, Rotations };
  Kind kind = Kind::Whole;
  std::vector<unsigned> composition;  // Young only

  std::vector<Permutation> resolve(const PermGroup& group) const;
  std::string to_text() const;
};

}  // namespace ldkep
