#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace fatlab;
using namespace fatlab::testing;

namespace {

// Composite of the linear sections v -> (h v, v) in the split VB-groupoid,
// worked out by hand from (c1, v1)(c2, v2) = (c1 + R1C c2 + R2 v2, v2).
Matrix product_oracle(const Ruth& R, const FatElement& a, const FatElement& b) {
  Matrix target_of_b = R.d(R.G.t(b.g)) * b.h + R.R1V[b.g];
  return a.h * target_of_b + R.R1C[a.g] * b.h + R.r2(a.g, b.g);
}

std::vector<Ruth> unital_ruths() {
  std::vector<Ruth> out;
  for (const auto& n : ruth_fixtures()) out.push_back(load_ruth(n));
  for (auto& R : random_ruths(23, 8)) out.push_back(R);
  return out;
}

std::pair<int, int> random_pair(const FiniteGroupoid& G, Rng& rng) {
  int g = static_cast<int>(rng.below(G.num_arrows()));
  for (;;) {
    int h = static_cast<int>(rng.below(G.num_arrows()));
    if (G.composable(g, h)) return {g, h};
  }
}

}  // namespace

TEST_CASE("fat product, units and inverses") {
  for (const auto& R : unital_ruths()) {
    Rng rng(1);
    for (int i = 0; i < 60; ++i) {
      auto [g, h] = random_pair(R.G, rng);
      int k = static_cast<int>(rng.below(R.G.num_arrows()));
      while (!R.G.composable(h, k)) k = static_cast<int>(rng.below(R.G.num_arrows()));
      auto a = random_fat(R, g, rng), b = random_fat(R, h, rng), c = random_fat(R, k, rng);
      auto ab = fat_product(R, a, b);
      CHECK(ab.h == product_oracle(R, a, b));
      CHECK(fat_equal(fat_product(R, ab, c), fat_product(R, a, fat_product(R, b, c))));
      CHECK(fat_equal(fat_product(R, fat_unit(R, R.G.t(g)), a), a));
      CHECK(fat_equal(fat_product(R, a, fat_unit(R, R.G.s(g))), a));
      auto ai = fat_inverse(R, a);
      CHECK(ai.h == fat_inverse_alt(R, a));
      CHECK(fat_equal(fat_product(R, a, ai), fat_unit(R, R.G.t(g))));
      CHECK(fat_equal(fat_product(R, ai, a), fat_unit(R, R.G.s(g))));
      // the representation is a functor into chain isomorphisms
      auto pa = fat_rep(R, a), pb = fat_rep(R, b), pab = fat_rep(R, ab);
      CHECK(pab.C == pa.C * pb.C);
      CHECK(pab.V == pa.V * pb.V);
      CHECK(R.d(R.G.t(g)) * pa.C == pa.V * R.d(R.G.s(g)));
      // conjugation of the kernel
      Matrix kk = random_fat(R, R.G.unit[R.G.s(g)], rng).h;
      CHECK(conjugation_check(R, a, kk));
      // left and right kernel actions are products with units
      Matrix kt = random_fat(R, R.G.unit[R.G.t(g)], rng).h;
      CHECK(fat_equal(fat_act_left(R, kt, a), fat_product(R, make_fat(R, R.G.unit[R.G.t(g)], kt), a)));
      CHECK(fat_equal(fat_act_right(R, a, kk), fat_product(R, a, make_fat(R, R.G.unit[R.G.s(g)], kk))));
      CHECK(comparison(a, fat_act_left(R, kt, a)) == kt * pa.V);
    }
  }
}

TEST_CASE("a mutated R2 breaks associativity") {
  auto R = load_ruth("nonflat-pair2");
  // pick a pair whose R2 actually enters a triple product
  R.r2(1, 2)(0, 0) += 1;
  Rng rng(3);
  bool broken = false;
  for (int i = 0; i < 200 && !broken; ++i) {
    int g = static_cast<int>(rng.below(4)), h = static_cast<int>(rng.below(4)), k = static_cast<int>(rng.below(4));
    if (!R.G.composable(g, h) || !R.G.composable(h, k)) continue;
    try {
      auto a = random_fat(R, g, rng), b = random_fat(R, h, rng), c = random_fat(R, k, rng);
      broken = !fat_equal(fat_product(R, fat_product(R, a, b), c), fat_product(R, a, fat_product(R, b, c)));
    } catch (const Error&) {
      broken = true;
    }
  }
  CHECK(broken);
}

TEST_CASE("splittings give the ruth back") {
  for (const auto& R : unital_ruths()) {
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<FatElement> lifts;
      for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(random_fat(R, g, rng));
      auto S = ruth_from_splitting(R, lifts);
      CHECK(ruth_equal(S, R));
      auto r2 = splitting_R2(R, lifts);
      for (int g = 0; g < R.G.num_arrows(); ++g)
        for (int h = 0; h < R.G.num_arrows(); ++h)
          if (R.G.composable(g, h)) CHECK(r2[g * R.G.num_arrows() + h] == R.r2(g, h));
    }
    for (int g = 0; g < R.G.num_arrows(); ++g) CHECK(certify_fiber(R, g).g == g);
  }
}

TEST_CASE("an empty fiber is not certified") {
  TwoTermComplex cx;
  cx.d = {Matrix(1, 1)};
  Ruth R = empty_ruth(cyclic_groupoid(2), cx);
  R.R1C = {Matrix{{1}}, Matrix{{1}}};
  R.R1V = {Matrix{{1}}, Matrix{{0}}};
  CHECK_THROWS_AS(certify_fiber(R, 1), Error);
  CHECK(certify_fiber(R, 0).h == Matrix(1, 1));
}

TEST_CASE("flat ruths trivialize") {
  for (const auto& name : {"flat-z2", "pair2-flat", "unit2"}) {
    auto R = load_ruth(name);
    REQUIRE(is_flat(R));
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
      auto [g, h] = random_pair(R.G, rng);
      auto a = random_fat(R, g, rng), b = random_fat(R, h, rng);
      auto ta = trivialize(R, a), tb = trivialize(R, b);
      auto tab = trivial_product(R, ta, tb);
      auto expect = trivialize(R, fat_product(R, a, b));
      CHECK(tab.g == expect.g);
      CHECK(tab.k == expect.k);
      CHECK(fat_equal(untrivialize(R, ta), a));
    }
  }
  CHECK_THROWS_AS(trivialize(load_ruth("nonflat-pair2"), zero_splitting(load_ruth("nonflat-pair2"))[1]), Error);
}

TEST_CASE("the pairing has a unique solution") {
  for (const auto& R : unital_ruths()) {
    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
      int g = static_cast<int>(rng.below(R.G.num_arrows()));
      int s = R.G.s(g);
      auto H = random_fat(R, g, rng);
      Matrix T = rng.matrix(R.c(s), R.v(s));
      auto sol = pairing_solve(R, H, T);
      CHECK(sol.unique);
      const auto& w = sol.omega;
      CHECK((w.A * R.R1C[g] - w.B * R.d(s)).is_identity());
      CHECK(w.A * H.h + w.B == T);
      auto cf = pairing_closed_form(R, H, T);
      CHECK(cf.A == w.A);
      CHECK(cf.B == w.B);
      // with zero target the dual element determines H
      auto w0 = pairing_solve(R, H, Matrix(R.c(s), R.v(s))).omega;
      CHECK(fat_equal(fat_from_dual(R, w0), H));
    }
    for (int i = 0; i < 20; ++i) {
      auto [g, h] = random_pair(R.G, rng);
      auto a = random_fat(R, g, rng), b = random_fat(R, h, rng);
      auto za = Matrix(R.c(R.G.s(g)), R.v(R.G.s(g))), zb = Matrix(R.c(R.G.s(h)), R.v(R.G.s(h)));
      auto wa = pairing_closed_form(R, a, za), wb = pairing_closed_form(R, b, zb);
      auto wab = pairing_closed_form(R, fat_product(R, a, b), zb);
      auto p = dual_product(R, wa, wb);
      CHECK(p.A == wab.A);
      CHECK(p.B == wab.B);
    }
  }
}

TEST_CASE("invariant cochains are a chain map") {
  for (const auto& R : unital_ruths()) {
    Rng rng(11);
    for (int n = 0; n <= 2; ++n) {
      CochainSpace sp(R, n);
      auto f = sp.unflatten(rng.vector(sp.dim()));
      auto df = differential(R, f);
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<FatElement> L;
        int g = static_cast<int>(rng.below(R.G.num_arrows()));
        L.push_back(random_fat(R, g, rng));
        while (static_cast<int>(L.size()) < n + 1) {
          int h = static_cast<int>(rng.below(R.G.num_arrows()));
          if (R.G.composable(L.back().g, h)) L.push_back(random_fat(R, h, rng));
        }
        auto val = fat_delta_eval(R, f, L);
        CHECK(val.c == invariant_eval(R, df, L));
        if (n >= 1) {
          std::vector<FatElement> first(L.begin(), L.begin() + n);
          CHECK(val.v == invariant_f1(R, df, first));
        } else {
          NerveIndex i0(R.G, 0);
          int x = R.G.t(L[0].g);
          CHECK(val.v == df.f1[i0.index(NerveTuple{{}, x})]);
        }
        // moving the first lift by the kernel changes the value by k phiV f1
        if (n >= 1) {
          const int t = R.G.t(L[0].g), s = R.G.s(L[0].g);
          Matrix k = random_fat(R, R.G.unit[t], rng).h;
          auto M = L;
          M.pop_back();
          auto moved = M;
          moved[0] = fat_act_left(R, k, M[0]);
          NerveIndex i1(R.G, n - 1);
          NerveTuple tail;
          for (std::size_t i = 1; i < M.size(); ++i) tail.arrows.push_back(M[i].g);
          if (tail.arrows.empty()) tail.object = s;
          Vector f1 = f.f1[i1.index(tail)];
          CHECK(invariant_eval(R, f, moved) == invariant_eval(R, f, M) - k * (fat_rep(R, M[0]).V * f1));
        }
      }
    }
  }
}

TEST_CASE("morphisms, their composition and VB maps") {
  Rng rng(13);
  for (const auto& R1 : unital_ruths()) {
    auto m21 = random_gauge(R1, rng);
    auto R2 = gauge_transform(R1, m21);
    auto m32 = random_gauge(R2, rng);
    auto R3 = gauge_transform(R2, m32);
    REQUIRE(check_structure(R2).ok());
    CHECK(morphism_check(R1, R2, m21, rng, 20).ok());
    CHECK(morphism_check(R2, R3, m32, rng, 20).ok());
    CHECK(morphism_check(R1, R1, identity_morphism(R1), rng, 10).ok());
    auto m31 = morphism_compose(R1, m21, m32);
    CHECK(morphism_check(R1, R3, m31, rng, 20).ok());
    // VB maps compose as matrices
    auto F21 = vb_map(R1, R2, m21), F32 = vb_map(R2, R3, m32), F31 = vb_map(R1, R3, m31);
    CHECK(vb_map_check(R1, R2, F21).ok());
    for (int g = 0; g < R1.G.num_arrows(); ++g) CHECK(F31[g] == F32[g] * F21[g]);
    auto back = morphism_from_vb_map(R1, R2, F21);
    CHECK(back.PhiC == m21.PhiC);
    CHECK(back.PhiV == m21.PhiV);
    CHECK(back.mu == m21.mu);
    // a wrong mu is detected on both sides
    bool found = false;
    for (int g = 0; g < R1.G.num_arrows() && !found; ++g) {
      if (R1.G.is_unit(g) || m21.mu[g].empty()) continue;
      auto bad = m21;
      bad.mu[g](0, 0) += 1;
      CHECK_FALSE(morphism_check(R1, R2, bad, rng, 5).ok());
      found = true;
    }
  }
}

TEST_CASE("the split VB-groupoid") {
  for (const auto& R : unital_ruths()) {
    auto vb = vb_structure(R);
    CHECK(ruth_equal(ruth_from_vb(vb), R));
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
      auto [g, h] = random_pair(R.G, rng);
      auto a = random_fat(R, g, rng), b = random_fat(R, h, rng);
      auto p = vb_section_product(vb, vb_section(vb, a), vb_section(vb, b));
      CHECK(p.H == vb_section(vb, fat_product(R, a, b)).H);
    }
  }
}

TEST_CASE("block matrices live in the direct sum") {
  Rng rng(19);
  for (const auto& R1 : unital_ruths()) {
    auto R2 = gauge_transform(R1, random_gauge(R1, rng));
    auto S = direct_sum(R1, R2);
    REQUIRE(check_structure(S).ok());
    auto to_fat = [&](const BlockFat& b) {
      Matrix h = vstack(hstack(b.h11, b.h12), hstack(b.h21, b.h22));
      return make_fat(S, b.g, h);
    };
    for (int i = 0; i < 20; ++i) {
      auto [g, h] = random_pair(R1.G, rng);
      auto ha = random_fat(S, g, rng), hb = random_fat(S, h, rng);
      auto split = [&](const FatElement& H) {
        const int s = R1.G.s(H.g), t = R1.G.t(H.g);
        const std::size_t c1 = R1.c(t), v1 = R1.v(s);
        return BlockFat{H.g, H.h.block(0, 0, c1, v1), H.h.block(0, v1, c1, R2.v(s)), H.h.block(c1, 0, R2.c(t), v1),
                        H.h.block(c1, v1, R2.c(t), R2.v(s))};
      };
      auto a = split(ha), b = split(hb);
      CHECK(block_member(R1, R2, a));
      CHECK(block_phiV(R1, R2, a) == fat_rep(S, ha).V);
      auto ab = block_product(R1, R2, a, b);
      CHECK(fat_equal(to_fat(ab), fat_product(S, ha, hb)));
    }
    auto u = block_unit(R1, R2, 0);
    CHECK(fat_equal(to_fat(u), fat_unit(S, 0)));
  }
}
