#include <stdexcept>

#include "doctest.h"
#include "ldkep/perm_group.hpp"

using namespace ldkep;

TEST_CASE("symmetric group enumeration") {
  PermGroup s4 = PermGroup::symmetric(4);
  CHECK(s4.order() == 24);
  CHECK(s4.identity().is_identity());
  CHECK(s4.elements().front().is_identity());  // identity sorts first
  for (const Permutation& p : s4.elements()) CHECK(s4.contains(p));
  CHECK(s4.center().size() == 1);
}

TEST_CASE("group axioms hold for every built-in kind") {
  for (const PermGroup& g : {PermGroup::symmetric(3), PermGroup::dihedral(8),
                             PermGroup::quaternion(), PermGroup::cyclic(6)}) {
    for (const Permutation& a : g.elements()) {
      CHECK(g.contains(a.inverse()));
      CHECK((a * a.inverse()).is_identity());
      for (const Permutation& b : g.elements()) CHECK(g.contains(a * b));
    }
  }
}

TEST_CASE("dihedral group of order 8") {
  PermGroup d4 = PermGroup::dihedral(8);
  CHECK(d4.order() == 8);
  auto center = d4.center();
  CHECK(center.size() == 2);  // {e, r^2}
  auto r2 = d4.element_by_name("r2");
  REQUIRE(r2.has_value());
  CHECK((center[0] == *r2 || center[1] == *r2));
  auto rotations = d4.rotation_subgroup();
  CHECK(rotations.size() == 4);
  auto s1 = d4.element_by_name("s1");
  REQUIRE(s1.has_value());
  CHECK_FALSE((*s1 * *r2).is_identity());
}

TEST_CASE("quaternion group") {
  PermGroup q8 = PermGroup::quaternion();
  CHECK(q8.order() == 8);
  CHECK(q8.center().size() == 2);
  auto m1 = q8.element_by_name("m1");
  auto i = q8.element_by_name("i");
  auto j = q8.element_by_name("j");
  auto k = q8.element_by_name("k");
  REQUIRE((m1 && i && j && k));
  CHECK(*i * *i == *m1);
  CHECK(*j * *j == *m1);
  CHECK(*i * *j == *k);
  CHECK(*j * *i == *m1 * *k);  // anticommutation
  CHECK((*m1 * *m1).is_identity());
  // every element of order 4 outside the center
  unsigned order4 = 0;
  for (const Permutation& p : q8.elements()) {
    Permutation p2 = p * p;
    if (!p2.is_identity() && (p2 * p2).is_identity()) ++order4;
  }
  CHECK(order4 == 6);
}

TEST_CASE("young subgroups") {
  PermGroup s5 = PermGroup::symmetric(5);
  auto young = s5.young_subgroup({3, 2});
  CHECK(young.size() == 12);  // 3! * 2!
  for (const Permutation& p : young) {
    for (unsigned i = 1; i <= 3; ++i) CHECK(p(i) <= 3);
    for (unsigned i = 4; i <= 5; ++i) CHECK(p(i) >= 4);
  }
  CHECK_THROWS_AS(s5.young_subgroup({3, 3}), std::invalid_argument);
}

TEST_CASE("subgroup specs resolve deterministically") {
  PermGroup s4 = PermGroup::symmetric(4);
  CHECK(SubgroupSpec{SubgroupSpec::Kind::Whole, {}}.resolve(s4).size() == 24);
  CHECK(SubgroupSpec{SubgroupSpec::Kind::Trivial, {}}.resolve(s4).size() == 1);
  CHECK(SubgroupSpec{SubgroupSpec::Kind::Young, {2, 2}}.resolve(s4).size() == 4);
  PermGroup d4 = PermGroup::dihedral(8);
  CHECK(SubgroupSpec{SubgroupSpec::Kind::Rotations, {}}.resolve(d4).size() == 4);
  CHECK(SubgroupSpec{SubgroupSpec::Kind::Center, {}}.resolve(d4).size() == 2);
}

TEST_CASE("permutation text round trip") {
  Permutation p = Permutation::from_text("2 1 3");
  CHECK(p == Permutation::transposition(3, 1, 2));
  CHECK(p.to_text() == "2 1 3");
  CHECK_THROWS_AS(Permutation::from_text("1 1 2"), std::invalid_argument);
}
