#include <stdexcept>

#include "doctest.h"
#include "ldkep/laver.hpp"

using namespace ldkep;

namespace {

// Reference tables for levels 1..3, row-major.
const std::uint32_t kLevel1[2][2] = {{2, 2}, {1, 2}};
const std::uint32_t kLevel2[4][4] = {
    {2, 4, 2, 4}, {3, 4, 3, 4}, {4, 4, 4, 4}, {1, 2, 3, 4}};
const std::uint32_t kLevel3[8][8] = {
    {2, 4, 6, 8, 2, 4, 6, 8}, {3, 4, 7, 8, 3, 4, 7, 8},
    {4, 8, 4, 8, 4, 8, 4, 8}, {5, 6, 7, 8, 5, 6, 7, 8},
    {6, 8, 6, 8, 6, 8, 6, 8}, {7, 8, 7, 8, 7, 8, 7, 8},
    {8, 8, 8, 8, 8, 8, 8, 8}, {1, 2, 3, 4, 5, 6, 7, 8}};

}  // namespace

TEST_CASE("level 1..3 tables match the classical values cell for cell") {
  LaverTable t1(1);
  for (unsigned x = 1; x <= 2; ++x)
    for (unsigned y = 1; y <= 2; ++y) CHECK(t1.apply(x, y) == kLevel1[x - 1][y - 1]);

  LaverTable t2(2);
  for (unsigned x = 1; x <= 4; ++x)
    for (unsigned y = 1; y <= 4; ++y) CHECK(t2.apply(x, y) == kLevel2[x - 1][y - 1]);

  LaverTable t3(3);
  for (unsigned x = 1; x <= 8; ++x)
    for (unsigned y = 1; y <= 8; ++y) CHECK(t3.apply(x, y) == kLevel3[x - 1][y - 1]);
}

TEST_CASE("spot values") {
  LaverTable t2(2);
  CHECK(t2.apply(1, 2) == 4);
  CHECK(t2.apply(2, 3) == 3);
  CHECK(t2.apply(3, 2) == 4);
  for (unsigned l = 1; l <= 4; ++l) CHECK(t2.apply(4, l) == l);

  LaverTable t3(3);
  CHECK(t3.apply(3, 2) == 8);
  CHECK(t3.apply(7, 5) == 8);
  CHECK(t3.apply(8, 6) == 6);
}

TEST_CASE("structure: identity row and successor column") {
  for (unsigned n = 1; n <= 5; ++n) {
    LaverTable t(n);
    std::uint32_t size = t.size();
    for (std::uint32_t l = 1; l <= size; ++l) CHECK(t.apply(size, l) == l);
    for (std::uint32_t k = 1; k < size; ++k) CHECK(t.apply(k, 1) == k + 1);
    CHECK(t.apply(size, 1) == 1);
  }
}

TEST_CASE("left self-distributivity holds exhaustively") {
  for (unsigned n = 1; n <= 4; ++n) {
    LaverTable t(n);
    CHECK(t.check_left_distributive_exhaustive());
  }
}

TEST_CASE("level bounds are enforced") {
  CHECK_THROWS_AS(LaverTable(0), std::invalid_argument);
  CHECK_THROWS_AS(LaverTable(6), std::invalid_argument);
  LaverTable t(2);
  CHECK_THROWS_AS(t.apply(0, 1), std::out_of_range);
  CHECK_THROWS_AS(t.apply(1, 5), std::out_of_range);
}
