#pragma once

#include <cstdint>

namespace csys {

// splitmix64; produces the same stream on every platform, so seeded suites
// are reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform-ish in [0, bound); bound 0 yields 0
  std::uint64_t below(std::uint64_t bound) {
    return bound == 0 ? 0 : next() % bound;
  }

  int below_int(int bound) {
    return bound <= 0 ? 0 : static_cast<int>(below(static_cast<std::uint64_t>(bound)));
  }

  bool coin() { return (next() & 1) != 0; }

  // an independent child stream
  std::uint64_t fork_seed() { return next() ^ 0xd1b54a32d192ed03ull; }

 private:
  std::uint64_t state_;
};

}  // namespace csys
