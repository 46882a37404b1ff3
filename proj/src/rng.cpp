#include "fatlab/rng.hpp"

#include <algorithm>

namespace fatlab {

std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
  return splitmix(splitmix(master) ^ stable_hash(name) ^ splitmix(index + 0x51ed2701ull));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = g_();
  while (x >= limit);
  return x % n;
}

int Rng::range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

Rational Rng::entry() {
  Rational q(range(-2, 2));
  if (coin(15)) q /= range(2, 3);
  return q;
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry();
  return m;
}

Matrix Rng::sparse_matrix(std::size_t rows, std::size_t cols, unsigned percent_nonzero) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(percent_nonzero)) m(i, j) = entry();
  return m;
}

Matrix Rng::invertible(std::size_t n) {
  for (;;) {
    Matrix m = matrix(n, n);
    if (fatlab::invertible(m)) return m;
  }
}

Matrix Rng::of_rank(std::size_t rows, std::size_t cols, std::size_t r) {
  r = std::min({r, rows, cols});
  for (;;) {
    Matrix m = matrix(rows, r) * matrix(r, cols);
    if (fatlab::rank(m) == r) return m;
  }
}

Vector Rng::vector(std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = entry();
  return v;
}

}  // namespace fatlab
