#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlab/rng.hpp"
#include "fatlab/twoterm.hpp"

using namespace fatlab;

namespace {

struct Fiber {
  Matrix d;
  std::size_t c, v;
};

Fiber random_fiber(Rng& rng) {
  std::size_t c = rng.range(0, 3), v = rng.range(0, 3);
  std::size_t r = rng.range(0, static_cast<int>(std::min(c, v)));
  return {rng.of_rank(v, c, r), c, v};
}

Matrix random_member(const Matrix& d, Rng& rng) {
  for (;;) {
    Matrix h = rng.matrix(d.cols(), d.rows());
    if (invertible(Matrix::identity(d.rows()) + d * h)) return h;
  }
}

// Induced maps on ker d and coker d, decided by rank counts.
bool qiso_oracle(const Matrix& d1, const Matrix& d2, const Matrix& pC, const Matrix& pV) {
  auto K1 = kernel_basis(d1);
  std::size_t k2 = d2.cols() - rank(d2);
  std::size_t img0 = K1.empty() ? 0 : rank(pC * Matrix::from_columns(d1.cols(), K1));
  bool h0 = img0 == K1.size() && img0 == k2;
  // H^1: V1 / im d1 -> V2 / im d2
  std::size_t r2 = rank(d2), r1 = rank(d1);
  std::size_t joint = rank(hstack(pV, d2));
  bool onto = joint == d2.rows();
  std::size_t pre = d1.rows() - (joint - r2);  // dim { v : pV v in im d2 }
  bool into = pre == r1;
  return h0 && onto && into;
}

}  // namespace

TEST_CASE("hand computed product and inverse") {
  Matrix d{{1}};
  Matrix h{{2}}, k{{3}};
  CHECK(h_product(d, h, k) == Matrix{{11}});           // 2 + 3 + 2*3
  CHECK(h_inverse(d, h) == Matrix{{Rational(-2, 3)}});  // -h / (1 + h)
  CHECK_FALSE(h_member(d, Matrix{{-1}}).member);
  CHECK_THROWS_AS(make_pert(d, Matrix{{-1}}), Error);
}

TEST_CASE("H(V,C) is a group and block_embed is a homomorphism") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto F = random_fiber(rng);
    Matrix zero(F.c, F.v);
    for (int i = 0; i < 20; ++i) {
      Matrix a = random_member(F.d, rng), b = random_member(F.d, rng), c = random_member(F.d, rng);
      Matrix ab = h_product(F.d, a, b);
      CHECK(h_member(F.d, ab).member);
      CHECK(h_product(F.d, ab, c) == h_product(F.d, a, h_product(F.d, b, c)));
      CHECK(h_product(F.d, a, zero) == a);
      CHECK(h_product(F.d, zero, a) == a);
      Matrix ai = h_inverse(F.d, a);
      CHECK(ai == h_inverse_left(F.d, a));
      CHECK(h_product(F.d, a, ai).is_zero());
      CHECK(h_product(F.d, ai, a).is_zero());
      CHECK(block_embed(F.d, ab) == block_embed(F.d, a) * block_embed(F.d, b));
      // phi is a chain map for d and multiplicative
      auto fa = h_frame(F.d, a), fb = h_frame(F.d, b), fab = h_frame(F.d, ab);
      CHECK(F.d * fa.C == fa.V * F.d);
      CHECK(fab.C == fa.C * fb.C);
      CHECK(fab.V == fa.V * fb.V);
      // dualizing is a homomorphism into H(C*, V*) for d^T
      Matrix dt = F.d.transpose();
      CHECK(h_dualize(F.d, ab) == h_product(dt, h_dualize(F.d, a), h_dualize(F.d, b)));
      // bracket is antisymmetric
      CHECK(hom_bracket(F.d, a, b) == -hom_bracket(F.d, b, a));
      auto pa = make_pert(F.d, a), pb = make_pert(F.d, b);
      CHECK(pert_product(pa, pb).h == ab);
    }
  }
}

TEST_CASE("canonical form and semidirect decomposition") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto F = random_fiber(rng);
    auto cf = canonical_form(F.d);
    std::size_t r = 99;
    Matrix can = cf.A * F.d * cf.B;
    CHECK(is_canonical(can, &r));
    CHECK(r == rank(F.d));
    CHECK(cf.r == r);
    Matrix h = random_member(F.d, rng);
    Matrix ht = transport_homotopy(cf, h);
    // transport is a group isomorphism
    Matrix k = random_member(F.d, rng);
    CHECK(transport_homotopy(cf, h_product(F.d, h, k)) ==
          h_product(can, ht, transport_homotopy(cf, k)));
    auto parts = semidirect_decompose(can, ht);
    CHECK(invertible(parts.glr));
    CHECK(semidirect_reconstruct(parts) == ht);
    CHECK(invertible(semidirect_matrix(parts)));
  }
  CHECK_THROWS_AS(semidirect_decompose(Matrix{{0, 1}}, Matrix{{0}, {0}}), Error);
}

TEST_CASE("quasi-isomorphism predicate matches the induced maps") {
  Rng rng(5);
  int agree = 0, iso = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto A = random_fiber(rng), B = random_fiber(rng);
    // chain maps are the kernel of (pC, pV) -> pV d1 - d2 pC
    std::size_t nC = B.c * A.c, nV = B.v * A.v;
    Matrix L(B.v * A.c, nC + nV);
    for (std::size_t i = 0; i < B.v; ++i)
      for (std::size_t j = 0; j < A.c; ++j) {
        std::size_t row = i * A.c + j;
        for (std::size_t k = 0; k < A.v; ++k) L(row, nC + i * A.v + k) += A.d(k, j);
        for (std::size_t k = 0; k < B.c; ++k) L(row, k * A.c + j) -= B.d(i, k);
      }
    auto K = kernel_basis(L);
    for (int m = 0; m < 10; ++m) {
      Vector x(nC + nV);
      for (const auto& v : K) x = x + rng.entry() * v;
      Matrix pC(B.c, A.c), pV(B.v, A.v);
      for (std::size_t i = 0; i < nC; ++i) pC(i / A.c, i % A.c) = x[i];
      for (std::size_t i = 0; i < nV; ++i) pV(i / A.v, i % A.v) = x[nC + i];
      REQUIRE(is_chain_map(A.d, B.d, pC, pV));
      bool q = quasi_iso(A.d, B.d, pC, pV);
      CHECK(q == qiso_oracle(A.d, B.d, pC, pV));
      agree += 1;
      iso += q;
    }
  }
  CHECK(agree == 600);
  CHECK(iso > 0);
  CHECK_THROWS_AS(quasi_iso(Matrix{{1}}, Matrix{{1}}, Matrix{{1}}, Matrix{{2}}), Error);
}

static GradedComplex random_three_term(Rng& rng) {
  GradedComplex K;
  K.dims = {static_cast<std::size_t>(rng.range(0, 3)), static_cast<std::size_t>(rng.range(1, 3)),
            static_cast<std::size_t>(rng.range(0, 3))};
  Matrix d0 = rng.of_rank(K.dims[1], K.dims[0], rng.range(0, static_cast<int>(std::min(K.dims[0], K.dims[1]))));
  auto Y = kernel_basis(d0.transpose());
  Matrix P = Matrix::from_columns(K.dims[1], Y).transpose();
  K.d = {d0, rng.matrix(K.dims[2], P.rows()) * P};
  return K;
}

TEST_CASE("composed homotopies differ by [d, eta32 eta21]") {
  Rng rng(9);
  int disagreed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    GradedComplex K[3] = {random_three_term(rng), random_three_term(rng), random_three_term(rng)};
    REQUIRE((K[0].d[1] * K[0].d[0]).is_zero());
    // Psi = Phi - [d, eta] with Phi = 0
    auto leg = [&](const GradedComplex& A, const GradedComplex& B) {
      GradedMap eta = {Matrix(0, A.dims[0]), rng.matrix(B.dims[0], A.dims[1]), rng.matrix(B.dims[1], A.dims[2])};
      GradedMap phi = {Matrix(B.dims[0], A.dims[0]), Matrix(B.dims[1], A.dims[1]), Matrix(B.dims[2], A.dims[2])};
      auto c = homotopy_commutator(A, B, eta);
      GradedMap psi = {-c[0], -c[1], -c[2]};
      return std::tuple{phi, psi, eta};
    };
    auto [P21, S21, e21] = leg(K[0], K[1]);
    auto [P32, S32, e32] = leg(K[1], K[2]);
    auto r = compose_homotopies(K[0], K[1], K[2], P21, S21, e21, P32, S32, e32);
    // theta = eta32 eta21 lives in degree 2 only: K1^2 -> K3^0. It is even,
    // so [d, theta] = d theta - theta d.
    Matrix theta = e32[1] * e21[2];
    Matrix expect1 = theta * K[0].d[1];
    Matrix expect2 = K[2].d[0] * theta;
    CHECK(r.difference[0].is_zero());
    CHECK(r.difference[1] == expect1);
    CHECK(r.difference[2] == -expect2);
    CHECK(r.agree == (expect1.is_zero() && expect2.is_zero()));
    disagreed += !r.agree;
  }
  CHECK(disagreed > 0);
  // on two-term complexes the two composites always agree
  Rng r2(4);
  auto A = two_term(r2.matrix(2, 2)), B = two_term(r2.matrix(1, 2));
  GradedMap eta21 = {Matrix(0, 2), r2.matrix(2, 2)};
  GradedMap eta32 = {Matrix(0, 2), r2.matrix(2, 1)};
  auto c21 = homotopy_commutator(A, B, eta21);
  auto c32 = homotopy_commutator(B, A, eta32);
  GradedMap z21 = {Matrix(2, 2), Matrix(1, 2)}, z32 = {Matrix(2, 2), Matrix(2, 1)};
  auto r = compose_homotopies(A, B, A, z21, {-c21[0], -c21[1]}, eta21, z32, {-c32[0], -c32[1]}, eta32);
  CHECK(r.agree);
  CHECK_THROWS_AS(compose_homotopies(A, B, A, z21, z21, eta21, z32, z32, eta32), Error);
}
