#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlab/infinitesimal.hpp"
#include "support.hpp"

using namespace fatlab;
using namespace fatlab::testing;

namespace {

Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Sum of x_i M_i.
Matrix combo(const std::vector<Matrix>& M, const Vector& x) {
  Matrix out(M[0].rows(), M[0].cols());
  for (std::size_t i = 0; i < x.size(); ++i) out += x[i] * M[i];
  return out;
}

// The fat bracket written out from the connection and curvature.
FatLieElement bracket_oracle(const LieRuth& R, const FatLieElement& x, const FatLieElement& y) {
  auto nabla = [&](const Vector& a, const Matrix& h) { return combo(R.C, a) * h - h * combo(R.V, a); };
  Matrix r2(R.c(), R.v());
  for (std::size_t i = 0; i < R.g.n; ++i)
    for (std::size_t j = 0; j < R.g.n; ++j) r2 += (x.a[i] * y.a[j]) * R.r2(i, j);
  Vector ab(R.g.n);
  for (std::size_t i = 0; i < R.g.n; ++i)
    for (std::size_t j = 0; j < R.g.n; ++j) ab = ab + (x.a[i] * y.a[j]) * R.g.bracket_basis(i, j);
  return {r2 + nabla(x.a, y.h) - nabla(y.a, x.h) + y.h * R.d * x.h - x.h * R.d * y.h, ab};
}

// sl2 acting trivially on C = Q, with V = 0.
LieRuth sl2_trivial() {
  LieRuth R;
  R.g = sl2();
  R.d = Matrix(0, 1);
  R.C.assign(3, Matrix(1, 1));
  R.V.assign(3, Matrix(0, 0));
  R.R2.assign(9, Matrix(1, 0));
  return R;
}

std::vector<LieRuth> examples() {
  std::vector<LieRuth> out;
  for (const auto& n : lie_example_names()) out.push_back(build_lie_example(n));
  out.push_back(sl2_trivial());
  return out;
}

}  // namespace

TEST_CASE("sl2 structure constants") {
  auto L = sl2();
  Vector h{1, 0, 0}, e{0, 1, 0}, f{0, 0, 1};
  CHECK(lie_bracket(L, h, e) == Rational(2) * e);
  CHECK(lie_bracket(L, h, f) == Rational(-2) * f);
  CHECK(lie_bracket(L, e, f) == h);
  CHECK(lie_check(L).ok());
  CHECK(lie_check(abelian_lie(3)).ok());
  auto bad = L;
  bad.c[1 * 3 + 2] = Vector{2, 0, 0};  // [e,f] = 2h but [f,e] = -h
  CHECK_FALSE(lie_check(bad).ok());
  auto bad2 = L;
  bad2.c[1 * 3 + 2] = Vector{1, 1, 0};
  bad2.c[2 * 3 + 1] = Vector{-1, -1, 0};
  CHECK_FALSE(lie_check(bad2).ok());
}

TEST_CASE("fat bracket matches the closed formula") {
  Rng rng(1);
  for (const auto& R : examples()) {
    REQUIRE(la_check(R).ok());
    for (int i = 0; i < 20; ++i) {
      FatLieElement x{rng.matrix(R.c(), R.v()), rng.vector(R.g.n)}, y{rng.matrix(R.c(), R.v()), rng.vector(R.g.n)};
      auto b = fat_bracket(R, x, y), o = bracket_oracle(R, x, y);
      CHECK(b.h == o.h);
      CHECK(b.a == o.a);
      // rho is a Lie algebra map into End(C) x End(V)
      auto rx = fat_lie_rep(R, x), ry = fat_lie_rep(R, y), rb = fat_lie_rep(R, b);
      CHECK(rb.C == comm(rx.C, ry.C));
      CHECK(rb.V == comm(rx.V, ry.V));
      CHECK(fat_coords(R, fat_from_coords(R, fat_coords(R, x))) == fat_coords(R, x));
    }
    CHECK(fat_jacobi_check(R).ok());
    CHECK(lie_check(fat_lie_algebra(R)).ok());
    CHECK(fat_dim(R) == R.c() * R.v() + R.g.n);
  }
}

TEST_CASE("Jacobi of the fat bracket holds exactly when the structure equations do") {
  auto base = build_lie_example("lie-d-invertible");
  Rng rng(2);
  int broken = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto R = base;
    std::size_t i = rng.below(3), j = rng.below(3);
    switch (trial % 3) {
      case 0:
        if (i == j) continue;
        R.R2[i * 3 + j](rng.below(2), rng.below(2)) += 1;
        R.R2[j * 3 + i] = Rational(-1) * R.R2[i * 3 + j];
        break;
      case 1:
        R.C[i](rng.below(2), rng.below(2)) += 1;
        break;
      default:
        R.V[i](rng.below(2), rng.below(2)) += 1;
        break;
    }
    bool la = la_check(R).ok();
    CHECK(la == fat_jacobi_check(R).ok());
    broken += !la;
  }
  CHECK(broken > 0);
}

TEST_CASE("Chevalley-Eilenberg cohomology") {
  for (const auto& R : examples()) {
    CHECK(ce_square_check(R, 3).ok());
    for (int k = 0; k < 3; ++k) CHECK((ce_matrix(R, k + 1) * ce_matrix(R, k)).is_zero());
  }
  // abelian of dim 2, trivial coefficients C = V = Q, d = 0: binom(2,k) + binom(2,k-1)
  CHECK(ce_cohomology(build_lie_example("abelian-2"), 3) == std::vector<std::size_t>{1, 3, 3, 1});
  // an invertible differential makes the complex acyclic
  CHECK(ce_cohomology(build_lie_example("lie-d-invertible"), 3) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(ce_cohomology(build_lie_example("sl2-std"), 3) == std::vector<std::size_t>{0, 0, 0, 0});
  // trivial coefficients on sl2 see only the degree 0 and degree 3 classes
  CHECK(ce_cohomology(sl2_trivial(), 3) == std::vector<std::size_t>{1, 0, 0, 1});
  auto bad = build_lie_example("lie-d-invertible");
  bad.C[0](0, 0) += 1;
  CHECK_THROWS_AS(ce_cohomology(bad, 2), Error);
}

TEST_CASE("alternating forms") {
  CHECK(increasing_tuples(4, 2).size() == 6);
  CHECK(increasing_tuples(3, 0).size() == 1);
  CHECK(tuple_index(4, {1, 3}) == 4);
  // D on 0-forms is the action
  auto R = build_lie_example("sl2-std");
  CEForm w = ce_zero(3, 2, 0);
  w.values[0] = Vector{1, 2};
  auto dw = ce_D(R.g, [&](std::size_t i) { return R.C[i]; }, w);
  for (std::size_t i = 0; i < 3; ++i) {
    Vector ei(3);
    ei[i] = 1;
    CHECK(ce_eval(dw, {ei}) == R.C[i] * w.values[0]);
  }
}

TEST_CASE("lifts to the fat algebra") {
  Rng rng(3);
  for (const auto& R : examples()) {
    CHECK(lift_check(R, 2, rng, 10).ok());
    for (int k = 1; k <= 2; ++k) {
      auto p = ce_unflatten(R, k, rng.vector(ce_pair_dim(R, k)));
      CHECK(ce_flatten(p) == ce_flatten(ce_unflatten(R, k, ce_flatten(p))));
      auto W0 = lift_w0(R, p), W1 = lift_w1(R, p);
      CHECK(invariant_form_check(R, W0, W1, rng.matrix(R.c(), R.v())));
    }
  }
}

TEST_CASE("resplitting gives an isomorphic fat algebra") {
  auto R = build_lie_example("lie-d-invertible");
  std::vector<Matrix> k = {Matrix{{1, 0}, {0, 0}}, Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}};
  auto S = resplit(R, k);
  CHECK(la_check(S).ok());
  CHECK(fat_jacobi_check(S).ok());
  CHECK(ce_cohomology(S, 3) == ce_cohomology(R, 3));
  auto T = build_lie_example("sl2-resplit");
  CHECK(la_check(T).ok());
  // d kills the trivial summands against each other, leaving the standard
  // representation, which has no cohomology
  CHECK(ce_cohomology(T, 3) == std::vector<std::size_t>{0, 0, 0, 0});
}
