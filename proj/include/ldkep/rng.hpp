#pragma once

#include <cstdint>

namespace ldkep {

// Deterministic 64-bit generator (splitmix64). Every seeded interface in the
// library draws from this so that test vectors do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n == 0 yields 0. Plain modulo: the bias is far below
  // anything our statistical checks can see and keeps sequences portable.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // Uniform in [lo, hi], inclusive.
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  bool coin() { return (next() & 1) != 0; }

  // Independent child stream, for splitting one seed across subsystems.
  Rng fork() { return Rng(next() ^ 0xa5a5a5a5deadbeefULL); }

 private:
  std::uint64_t state_;
};

}  // namespace ldkep
