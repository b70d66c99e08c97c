#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ldkep {

// Laver table of level n: the unique left self-distributive operation on
// {1, ..., 2^n} with k*1 = k+1 (and 2^n * 1 = 1). Levels are capped at 5;
// that is plenty for desk-scale experiments and keeps tables in cache.
class LaverTable {
 public:
  explicit LaverTable(unsigned level);

  unsigned level() const { return level_; }
  std::uint32_t size() const { return size_; }

  // x * y with 1-based arguments in {1..2^n}.
  std::uint32_t apply(std::uint32_t x, std::uint32_t y) const;

  // Scan all size^3 triples for the left self-distributive law; returns the
  // first violating triple or nullptr semantics via the bool.
  bool check_left_distributive_exhaustive(std::uint32_t* bad_x = nullptr,
                                          std::uint32_t* bad_y = nullptr,
                                          std::uint32_t* bad_z = nullptr) const;

  std::string to_text() const;

 private:
  unsigned level_;
  std::uint32_t size_;
  std::vector<std::uint32_t> entries_;  // row-major, entries_[(x-1)*size_ + (y-1)]
};

}  // namespace ldkep
