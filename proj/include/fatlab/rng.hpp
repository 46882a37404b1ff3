#pragma once

// Seeded randomness with platform-independent output. std distributions are
// implementation defined, so sampling is done by hand on top of mt19937_64.

#include <cstdint>
#include <random>
#include <string_view>

#include "fatlab/ratlin.hpp"

namespace fatlab {

std::uint64_t stable_hash(std::string_view s);
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  std::uint64_t below(std::uint64_t n);
  int range(int lo, int hi);  // inclusive
  bool coin(unsigned percent) { return below(100) < percent; }

  // Small entries, mostly integers in [-2,2] with an occasional half or third.
  Rational entry();
  Matrix matrix(std::size_t rows, std::size_t cols);
  Matrix sparse_matrix(std::size_t rows, std::size_t cols, unsigned percent_nonzero);
  Matrix invertible(std::size_t n);
  Matrix of_rank(std::size_t rows, std::size_t cols, std::size_t r);
  Vector vector(std::size_t n);

 private:
  std::mt19937_64 g_;
};

}  // namespace fatlab
