#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "fatlab/ratlin.hpp"
#include "fatlab/rng.hpp"

using namespace fatlab;

namespace {

// Leibniz expansion; fine for the small sizes used here.
Rational det_oracle(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational sum = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Rational term = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

// Rank as the largest nonvanishing minor.
std::size_t rank_oracle(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t best = 0;
  for (unsigned rm = 1; rm < (1u << m); ++rm)
    for (unsigned cm = 1; cm < (1u << n); ++cm) {
      std::size_t k = __builtin_popcount(rm);
      if (k != static_cast<std::size_t>(__builtin_popcount(cm)) || k <= best) continue;
      Matrix sub(k, k);
      std::size_t r = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rm >> i & 1)) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (cm >> j & 1) sub(r, c++) = a(i, j);
        ++r;
      }
      if (det_oracle(sub) != 0) best = k;
    }
  return best;
}

}  // namespace

TEST_CASE("rationals print and parse") {
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("hand computed inverse and solve") {
  Matrix a{{1, 2}, {3, 4}};
  Matrix expect{{-2, 1}, {Rational(3, 2), Rational(-1, 2)}};
  CHECK(inverse(a) == expect);
  auto s = solve(a, Vector{5, 6});
  CHECK(s.unique);
  CHECK(s.x == Vector{-4, Rational(9, 2)});
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), Error);
  CHECK_THROWS_AS(inverse(Matrix(2, 3)), Error);
  CHECK_THROWS_AS(solve(Matrix{{1, 1}, {1, 1}}, Vector{1, 2}), Error);
}

TEST_CASE("empty shapes behave as zero maps") {
  Matrix a(0, 3), b(3, 0);
  CHECK((b * a).rows() == 3);
  CHECK((b * a).is_zero());
  CHECK((a * b).rows() == 0);
  CHECK(rank(a) == 0);
  CHECK(kernel_basis(a).size() == 3);
  CHECK(inverse(Matrix(0, 0)) == Matrix(0, 0));
  CHECK(invertible(Matrix(0, 0)));
  CHECK(solve(Matrix(0, 2), Vector{}).x.size() == 2);
}

TEST_CASE("rank, kernel and inverse agree with minors") {
  Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t m = rng.range(1, 4), n = rng.range(1, 4);
    Matrix a = rng.coin(50) ? rng.of_rank(m, n, rng.range(0, static_cast<int>(std::min(m, n)))) : rng.matrix(m, n);
    std::size_t r = rank_oracle(a);
    REQUIRE(rank(a) == r);
    auto K = kernel_basis(a);
    CHECK(K.size() == n - r);
    for (const auto& v : K) CHECK(is_zero(a * v));
    if (!K.empty()) CHECK(rank(Matrix::from_columns(n, K)) == K.size());
    if (m == n) {
      bool inv = det_oracle(a) != 0;
      CHECK(invertible(a) == inv);
      if (inv) {
        CHECK((a * inverse(a)).is_identity());
        CHECK((inverse(a) * a).is_identity());
      }
    }
    Vector x = rng.vector(n);
    Vector b = a * x;
    auto s = solve(a, b);
    CHECK(a * s.x == b);
    CHECK(s.unique == (r == n));
  }
}

TEST_CASE("stacking, blocks and powers") {
  Matrix a{{1, 2}}, b{{3, 4}};
  Matrix v = vstack(a, b);
  CHECK(v == Matrix{{1, 2}, {3, 4}});
  CHECK(hstack(a, b) == Matrix{{1, 2, 3, 4}});
  CHECK(v.block(1, 0, 1, 2) == b);
  Matrix ds = direct_sum(a, b);
  CHECK(ds.rows() == 2);
  CHECK(ds.cols() == 4);
  CHECK(ds(1, 2) == 3);
  CHECK(ds(0, 2) == 0);
  Matrix n{{0, 1}, {0, 0}};
  CHECK(power(n, 2).is_zero());
  CHECK(power(v, 0).is_identity());
  CHECK(power(v, 3) == v * v * v);
  CHECK(v.transpose() == Matrix{{1, 3}, {2, 4}});
}

TEST_CASE("seeded sampling is reproducible") {
  Rng a(derive_seed(42, "x", 0)), b(derive_seed(42, "x", 0)), c(derive_seed(42, "x", 1));
  Matrix ma = a.matrix(3, 3), mb = b.matrix(3, 3), mc = c.matrix(3, 3);
  CHECK(ma == mb);
  CHECK(ma != mc);
  Rng d(5);
  for (int i = 0; i < 20; ++i) CHECK(invertible(d.invertible(3)));
  CHECK(stable_hash("abc") == stable_hash("abc"));
  CHECK(stable_hash("abc") != stable_hash("abd"));
}
