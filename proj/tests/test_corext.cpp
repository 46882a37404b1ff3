#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fatlab/corext.hpp"
#include "support.hpp"

using namespace fatlab;
using namespace fatlab::testing;

namespace {

// Well-formed triples over each object, divided by the free action of H
// there (g3 h has the same source as g3).
std::size_t squares_oracle(const FiniteCoreExtension& E) {
  std::size_t orbits = 0;
  for (int x = 0; x < E.F.num_objects(); ++x) {
    std::size_t hsize = 0, triples = 0;
    for (int f = 0; f < E.F.num_arrows(); ++f)
      if (E.in_H(f) && E.F.s(f) == x) ++hsize;
    for (int g3 = 0; g3 < E.F.num_arrows(); ++g3) {
      if (E.F.s(g3) != x) continue;
      for (int g2 = 0; g2 < E.down.num_arrows(); ++g2) {
        if (E.down.s(g2) != x) continue;
        for (int g1 = 0; g1 < E.F.num_arrows(); ++g1)
          if (E.F.s(g1) == E.down.t(g2)) ++triples;
      }
    }
    CHECK(triples % hsize == 0);
    orbits += triples / hsize;
  }
  return orbits;
}

// pair(2) over itself, H trivial.
FiniteCoreExtension pair_extension() {
  FiniteCoreExtension E;
  E.F = E.down = E.right = pair_groupoid(2);
  for (int f = 0; f < E.F.num_arrows(); ++f) {
    E.pi.push_back(f);
    E.tau.push_back(f);
  }
  E.act.assign(16, -1);
  for (int d = 0; d < 4; ++d) E.act[d * 4 + E.F.unit[E.F.s(d)]] = E.F.unit[E.F.t(d)];
  prepare(E);
  return E;
}

}  // namespace

TEST_CASE("shipped finite core extensions") {
  std::vector<std::pair<std::string, std::size_t>> expect = {{"inner-s3", 36}, {"crossed-z3-s3", 72}, {"trivial-h-z2", 8}};
  for (const auto& [name, n] : expect) {
    CAPTURE(name);
    auto E = build_core_example(name);
    CHECK(validate_core_extension(E).ok());
    CHECK(double_check(E).ok());
    CHECK(core_recover_check(E).ok());
    CHECK(count_squares(E) == n);
    CHECK(squares_oracle(E) == n);
    // the file form is the same structure
    auto doc = load_document(fixture(name));
    REQUIRE(doc.core.has_value());
    CHECK(doc.core->E.act == E.act);
    CHECK(doc.core->E.pi == E.pi);
  }
  auto P = pair_extension();
  CHECK(validate_core_extension(P).ok());
  CHECK(double_check(P).ok());
  CHECK(core_recover_check(P).ok());
  CHECK(count_squares(P) == 16);
  CHECK(squares_oracle(P) == 16);
  CHECK_THROWS_AS(build_core_example("nope"), Error);
}

TEST_CASE("a broken action is rejected") {
  auto E = build_core_example("crossed-z3-s3");
  // a reflection now fixes a rotation instead of inverting it
  E.act[1 * 6 + 4] = 4;
  CHECK_FALSE(validate_core_extension(E).ok());
  CHECK_THROWS_AS(double_check(E), Error);
}

TEST_CASE("interchange on squares of a finite double groupoid") {
  auto E = build_core_example("inner-s3");
  DoubleGroupoid<FiniteCoreOps> D(FiniteCoreOps{&E});
  Report rep;
  // all squares with the identity as g3 are canonical here
  std::vector<Square<FiniteCoreOps>> S;
  for (int g1 = 0; g1 < 6; ++g1)
    for (int g2 = 0; g2 < 6; ++g2) S.push_back(D.normalize({g1, g2, 0}));
  for (const auto& a : S)
    for (const auto& b : S) {
      if (!D.h_composable(a, b)) continue;
      for (const auto& c : S) {
        if (!D.v_composable(a, c)) continue;
        for (const auto& d : S)
          if (D.h_composable(c, d) && D.v_composable(b, d)) corext_checks::interchange(D, rep, a, b, c, d);
      }
    }
  CHECK(rep.checked > 0);
  CHECK(rep.ok());
}

TEST_CASE("fat extensions as core extensions") {
  std::vector<Ruth> rs;
  for (const auto& n : {"nonflat-pair2", "nonflat-cyclic3", "pair2-flat", "unit2", "flat-z2"}) rs.push_back(load_ruth(n));
  Rng seed(6);
  rs.push_back(random_ruth(action_groupoid(2, 2), 2, 1, seed));
  for (const auto& R : rs) {
    auto o = fat_core_ops(R);
    Rng rng(7);
    CHECK(sampled_extension_check(o, rng, 40).ok());
    DoubleGroupoid<FatCoreOps> D(o);
    CHECK(sampled_double_check(D, rng, 30).ok());
    CHECK(sampled_core_check(D, rng, 30).ok());
  }
  // a twisted action is caught
  auto R = load_ruth("nonflat-pair2");
  auto o = fat_core_ops(R);
  o.twist = 1;
  Rng rng(8);
  bool caught = false;
  try {
    auto rep = sampled_extension_check(o, rng, 40);
    DoubleGroupoid<FatCoreOps> D(o);
    rep.merge(sampled_core_check(D, rng, 30));
    caught = !rep.ok();
  } catch (const Error&) {
    caught = true;  // the twisted image left the kernel
  }
  CHECK(caught);
  // non-unital ruths do not give a core extension
  auto S = R;
  S.unital = false;
  CHECK_THROWS_AS(fat_core_ops(S), Error);
}
