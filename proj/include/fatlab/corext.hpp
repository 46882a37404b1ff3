#pragma once

// Core extensions H -> F -> G_right with a map F -> G_down and an action of
// G_down on H, and the vertically core-transitive double groupoid they define.
//
// A square is a triple (g1, g2, g3) with g1, g3 in F, g2 in G_down,
// s(g2) = s(g3) and t(g2) = s(g1), taken modulo
//   (g1, g2, g3) ~ (g1 (g2 . h), g2, g3 h),  h in H at s(g3).
// Its edges are
//   t_right = tau(g1) g2 tau(g3)^-1,  s_right = g2,
//   t_down  = pi(g1),                 s_down  = pi(g3).
// Squares are stored with g3 = section(pi(g3)).
//
// The structure is a template over an Ops type supplying the groupoids and
// maps, so the finite tables and the fat extension share one code path.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fatlab/glpb.hpp"
#include "fatlab/groupoid.hpp"
#include "fatlab/report.hpp"
#include "fatlab/rng.hpp"

namespace fatlab {

template <class Ops>
struct Square {
  typename Ops::F g1;
  typename Ops::D g2;
  typename Ops::F g3;
};

template <class Ops>
class DoubleGroupoid {
 public:
  using F = typename Ops::F;
  using D = typename Ops::D;
  using R = typename Ops::R;
  using Sq = Square<Ops>;

  explicit DoubleGroupoid(const Ops& ops) : o_(ops) {}
  const Ops& ops() const { return o_; }

  bool well_formed(const Sq& a) const {
    return o_.d_s(a.g2) == o_.f_s(a.g3) && o_.d_t(a.g2) == o_.f_s(a.g1);
  }
  // (g1 (g2 . h), g2, g3 h)
  Sq move(const Sq& a, const F& h) const {
    return {o_.f_mul(a.g1, o_.act(a.g2, h)), a.g2, o_.f_mul(a.g3, h)};
  }
  Sq normalize(const Sq& a) const {
    return move(a, o_.f_mul(o_.f_inv(a.g3), o_.section(o_.pi(a.g3))));
  }
  bool equal(const Sq& a, const Sq& b) const {
    Sq x = normalize(a), y = normalize(b);
    return o_.f_eq(x.g1, y.g1) && o_.d_eq(x.g2, y.g2) && o_.f_eq(x.g3, y.g3);
  }

  D t_right(const Sq& a) const { return o_.d_mul(o_.d_mul(o_.tau(a.g1), a.g2), o_.d_inv(o_.tau(a.g3))); }
  D s_right(const Sq& a) const { return a.g2; }
  R t_down(const Sq& a) const { return o_.pi(a.g1); }
  R s_down(const Sq& a) const { return o_.pi(a.g3); }

  bool v_composable(const Sq& a, const Sq& b) const { return o_.r_eq(s_down(a), t_down(b)); }
  bool h_composable(const Sq& a, const Sq& b) const { return o_.d_eq(s_right(a), t_right(b)); }

  // Glues along the G_right edges; the G_down edges compose.
  Sq vprod(const Sq& a, const Sq& b) const {
    if (!v_composable(a, b)) throw Error(ErrorKind::NotComposable, "squares: s_down(a) != t_down(b)");
    F h = o_.act(o_.d_inv(b.g2), o_.f_mul(o_.f_inv(b.g1), a.g3));
    Sq b2 = move(b, h);
    return normalize({a.g1, o_.d_mul(a.g2, b2.g2), b2.g3});
  }
  // Glues along the G_down edges; the G_right edges compose.
  Sq hprod(const Sq& a, const Sq& b) const {
    if (!h_composable(a, b)) throw Error(ErrorKind::NotComposable, "squares: s_right(a) != t_right(b)");
    return normalize({o_.f_mul(a.g1, b.g1), b.g2, o_.f_mul(a.g3, b.g3)});
  }
  // 1_right(d) is the unit of hprod on the edge d.
  Sq unit_right(const D& d) const { return normalize({o_.f_unit(o_.d_t(d)), d, o_.f_unit(o_.d_s(d))}); }
  Sq unit_down(const R& r) const { return normalize({o_.section(r), o_.d_unit(o_.r_s(r)), o_.section(r)}); }
  Sq vinv(const Sq& a) const { return normalize({a.g3, o_.d_inv(a.g2), a.g1}); }
  Sq hinv(const Sq& a) const { return normalize({o_.f_inv(a.g1), t_right(a), o_.f_inv(a.g3)}); }
  // The core square of f: [f, 1, 1].
  Sq core(const F& f) const { return normalize({f, o_.d_unit(o_.f_s(f)), o_.f_unit(o_.f_s(f))}); }

  std::string show(const Sq& a) const {
    return "[" + o_.show_f(a.g1) + ", " + o_.show_d(a.g2) + ", " + o_.show_f(a.g3) + "]";
  }

 private:
  Ops o_;
};

// Item checks shared by the exhaustive and the sampled drivers.
namespace corext_checks {

template <class Ops>
void functor(const Ops& o, Report& rep, const typename Ops::F& f, const typename Ops::F& g) {
  ++rep.checked;
  auto fg = o.f_mul(f, g);
  std::string w = o.show_f(f) + " * " + o.show_f(g);
  if (!o.r_eq(o.pi(fg), o.r_mul(o.pi(f), o.pi(g)))) rep.fail("F -> G_right is a groupoid map", w);
  if (!o.d_eq(o.tau(fg), o.d_mul(o.tau(f), o.tau(g)))) rep.fail("F -> G_down is a groupoid map", w);
}

template <class Ops>
void section(const Ops& o, Report& rep, const typename Ops::R& r) {
  ++rep.checked;
  auto f = o.section(r);
  if (!o.r_eq(o.pi(f), r)) rep.fail("F -> G_right is surjective (section)", o.show_r(r));
  if (o.r_is_unit(r) && !o.f_eq(f, o.f_unit(o.r_s(r)))) rep.fail("the section sends units to units", o.show_r(r));
}

// h1, h2 in H at s(d2); d1 d2 composable.
template <class Ops>
void action(const Ops& o, Report& rep, const typename Ops::D& d1, const typename Ops::D& d2, const typename Ops::F& h1,
            const typename Ops::F& h2) {
  ++rep.checked;
  std::string w = o.show_d(d2) + " on " + o.show_f(h1);
  auto a1 = o.act(d2, h1);
  if (!o.r_is_unit(o.pi(a1)) || o.f_s(a1) != o.d_t(d2)) rep.fail("G_down acts on H", w);
  if (!o.f_eq(o.act(d2, o.f_mul(h1, h2)), o.f_mul(a1, o.act(d2, h2))))
    rep.fail("G_down acts by automorphisms", w + ", " + o.show_f(h2));
  if (!o.f_eq(o.act(o.d_mul(d1, d2), h1), o.act(d1, a1))) rep.fail("the action is compatible with products", o.show_d(d1) + " " + w);
  if (!o.f_eq(o.act(o.d_unit(o.d_s(d2)), h1), h1)) rep.fail("units act trivially", o.show_f(h1));
  if (!o.d_eq(o.tau(a1), o.d_mul(o.d_mul(d2, o.tau(h1)), o.d_inv(d2))))
    rep.fail("H -> G_down is equivariant", w);
}

// h in H at s(f).
template <class Ops>
void peiffer(const Ops& o, Report& rep, const typename Ops::F& f, const typename Ops::F& h) {
  ++rep.checked;
  if (!o.f_eq(o.f_mul(o.f_mul(f, h), o.f_inv(f)), o.act(o.tau(f), h)))
    rep.fail("Peiffer identity: f h f^-1 = tau(f) . h", o.show_f(f) + ", " + o.show_f(h));
}

template <class Ops>
void square(const DoubleGroupoid<Ops>& D, Report& rep, const Square<Ops>& a, const typename Ops::F& h) {
  const auto& o = D.ops();
  ++rep.checked;
  std::string w = D.show(a);
  if (!D.equal(D.move(a, h), a)) rep.fail("the canonical representative is constant on orbits", w + " moved by " + o.show_f(h));
  auto n = D.normalize(D.move(a, h));
  if (!D.equal(D.normalize(D.move(n, o.f_inv(h))), a) || !o.f_eq(n.g3, D.normalize(a).g3))
    rep.fail("the canonical representative is unique", w);
  if (!D.equal(D.hprod(a, D.unit_right(D.s_right(a))), a) || !D.equal(D.hprod(D.unit_right(D.t_right(a)), a), a))
    rep.fail("horizontal units are neutral", w);
  if (!D.equal(D.vprod(a, D.unit_down(D.s_down(a))), a) || !D.equal(D.vprod(D.unit_down(D.t_down(a)), a), a))
    rep.fail("vertical units are neutral", w);
  if (!D.equal(D.hprod(a, D.hinv(a)), D.unit_right(D.t_right(a))) ||
      !D.equal(D.hprod(D.hinv(a), a), D.unit_right(D.s_right(a))))
    rep.fail("horizontal inverse", w);
  if (!D.equal(D.vprod(a, D.vinv(a)), D.unit_down(D.t_down(a))) ||
      !D.equal(D.vprod(D.vinv(a), a), D.unit_down(D.s_down(a))))
    rep.fail("vertical inverse", w);
}

template <class Ops>
void h_assoc(const DoubleGroupoid<Ops>& D, Report& rep, const Square<Ops>& a, const Square<Ops>& b, const Square<Ops>& c) {
  ++rep.checked;
  auto l = D.hprod(D.hprod(a, b), c), r = D.hprod(a, D.hprod(b, c));
  if (!D.equal(l, r)) rep.fail("horizontal product is associative", D.show(a) + " " + D.show(b) + " " + D.show(c));
  auto ab = D.hprod(a, b);
  const auto& o = D.ops();
  if (!o.d_eq(D.s_right(ab), D.s_right(b)) || !o.d_eq(D.t_right(ab), D.t_right(a)) ||
      !o.r_eq(D.t_down(ab), o.r_mul(D.t_down(a), D.t_down(b))) || !o.r_eq(D.s_down(ab), o.r_mul(D.s_down(a), D.s_down(b))))
    rep.fail("horizontal product respects edges", D.show(a) + " " + D.show(b));
}

template <class Ops>
void v_assoc(const DoubleGroupoid<Ops>& D, Report& rep, const Square<Ops>& a, const Square<Ops>& b, const Square<Ops>& c) {
  ++rep.checked;
  auto l = D.vprod(D.vprod(a, b), c), r = D.vprod(a, D.vprod(b, c));
  if (!D.equal(l, r)) rep.fail("vertical product is associative", D.show(a) + " " + D.show(b) + " " + D.show(c));
  auto ab = D.vprod(a, b);
  const auto& o = D.ops();
  if (!o.r_eq(D.s_down(ab), D.s_down(b)) || !o.r_eq(D.t_down(ab), D.t_down(a)) ||
      !o.d_eq(D.s_right(ab), o.d_mul(D.s_right(a), D.s_right(b))) ||
      !o.d_eq(D.t_right(ab), o.d_mul(D.t_right(a), D.t_right(b))))
    rep.fail("vertical product respects edges", D.show(a) + " " + D.show(b));
}

// a b horizontally, c d horizontally, a over c and b over d.
template <class Ops>
void interchange(const DoubleGroupoid<Ops>& D, Report& rep, const Square<Ops>& a, const Square<Ops>& b,
                 const Square<Ops>& c, const Square<Ops>& d) {
  ++rep.checked;
  auto l = D.vprod(D.hprod(a, b), D.hprod(c, d));
  auto r = D.hprod(D.vprod(a, c), D.vprod(b, d));
  if (!D.equal(l, r))
    rep.fail("interchange law", D.show(a) + " " + D.show(b) + " / " + D.show(c) + " " + D.show(d));
}

// The core of the double groupoid gives back F, pi, tau and the action.
// g h composable in F; h2 in H at s(d), d in G_down.
template <class Ops>
void core(const DoubleGroupoid<Ops>& D, Report& rep, const typename Ops::F& g, const typename Ops::F& h,
          const typename Ops::D& d, const typename Ops::F& h2) {
  const auto& o = D.ops();
  ++rep.checked;
  std::string w = o.show_f(g) + ", " + o.show_f(h);
  auto cg = D.core(g), ch = D.core(h);
  auto prod = D.hprod(D.vprod(cg, D.unit_right(D.t_right(ch))), ch);
  if (!D.equal(prod, D.core(o.f_mul(g, h)))) rep.fail("core product recovers F", w);
  if (!o.r_eq(D.t_down(cg), o.pi(g))) rep.fail("core t_down recovers F -> G_right", o.show_f(g));
  if (!o.d_eq(D.t_right(cg), o.tau(g))) rep.fail("core t_right recovers F -> G_down", o.show_f(g));
  auto conj = D.vprod(D.vprod(D.unit_right(d), D.core(h2)), D.vinv(D.unit_right(d)));
  if (!D.equal(conj, D.core(o.act(d, h2))))
    rep.fail("core conjugation recovers the action", o.show_d(d) + " on " + o.show_f(h2));
}

}  // namespace corext_checks

// Sampled verification. Ops supplies sample_object, sample_R_from(x),
// sample_F_over(r), sample_D_to(y) and sample_H(x).
template <class Ops>
Report sampled_extension_check(const Ops& o, Rng& rng, int samples) {
  Report rep;
  for (int i = 0; i < samples; ++i) {
    int x = o.sample_object(rng);
    auto r = o.sample_R_from(x, rng);
    corext_checks::section(o, rep, r);
    auto g = o.sample_F_over(r, rng);
    auto f = o.sample_F_over(o.sample_R_from(o.r_t(r), rng), rng);
    corext_checks::functor(o, rep, f, g);
    auto h1 = o.sample_H(x, rng), h2 = o.sample_H(x, rng);
    try {
      corext_checks::peiffer(o, rep, g, h1);
    } catch (const Error& e) {
      rep.fail("G_down acts on H", e.what());
    }
    auto d2 = o.d_inv(o.sample_D_to(x, rng));  // x -> y
    auto d1 = o.d_inv(o.sample_D_to(o.d_t(d2), rng));
    try {
      corext_checks::action(o, rep, d1, d2, h1, h2);
    } catch (const Error& e) {
      rep.fail("G_down acts on H", e.what());
    }
  }
  return rep;
}

template <class Ops>
Square<Ops> sample_square_over(const DoubleGroupoid<Ops>& D, const typename Ops::F& g1, const typename Ops::D& g2,
                               Rng& rng) {
  const auto& o = D.ops();
  return D.normalize({g1, g2, o.section(o.sample_R_from(o.d_s(g2), rng))});
}

template <class Ops>
Report sampled_double_check(const DoubleGroupoid<Ops>& D, Rng& rng, int samples) {
  const auto& o = D.ops();
  Report rep;
  auto any_F_from = [&](int x) { return o.sample_F_over(o.sample_R_from(x, rng), rng); };
  for (int i = 0; i < samples; ++i) {
    int x = o.sample_object(rng);
    auto b1 = any_F_from(x);
    auto b = sample_square_over(D, b1, o.sample_D_to(x, rng), rng);
    auto a2 = D.t_right(b);
    auto a = sample_square_over(D, any_F_from(o.d_t(a2)), a2, rng);
    auto d1 = o.sample_F_over(D.s_down(b), rng);
    auto d = sample_square_over(D, d1, o.sample_D_to(o.f_s(d1), rng), rng);
    auto c = sample_square_over(D, o.sample_F_over(D.s_down(a), rng), D.t_right(d), rng);
    corext_checks::interchange(D, rep, a, b, c, d);
    corext_checks::square(D, rep, b, o.sample_H(o.f_s(b.g3), rng));
    // a square to the right of b: t_right(e) = s_right(b)
    auto e1 = o.f_inv(any_F_from(o.d_t(b.g2)));
    auto e3 = o.f_inv(any_F_from(o.d_s(b.g2)));
    Square<Ops> e = D.normalize({e1, o.d_mul(o.d_mul(o.d_inv(o.tau(e1)), b.g2), o.tau(e3)), e3});
    corext_checks::h_assoc(D, rep, a, b, e);
    // a square below c
    auto f1 = o.sample_F_over(D.s_down(c), rng);
    auto f = sample_square_over(D, f1, o.sample_D_to(o.f_s(f1), rng), rng);
    corext_checks::v_assoc(D, rep, a, c, f);
  }
  return rep;
}

template <class Ops>
Report sampled_core_check(const DoubleGroupoid<Ops>& D, Rng& rng, int samples) {
  const auto& o = D.ops();
  Report rep;
  for (int i = 0; i < samples; ++i) {
    auto h = o.sample_F_over(o.sample_R_from(o.sample_object(rng), rng), rng);
    auto g = o.sample_F_over(o.sample_R_from(o.r_t(o.pi(h)), rng), rng);
    auto d = o.sample_D_to(o.sample_object(rng), rng);
    corext_checks::core(D, rep, g, h, d, o.sample_H(o.d_s(d), rng));
  }
  return rep;
}

// Fully tabulated core extension. All groupoids share the object set of F.
struct FiniteCoreExtension {
  FiniteGroupoid F, down, right;
  std::vector<int> pi;       // F arrow -> right arrow
  std::vector<int> tau;      // F arrow -> down arrow
  std::vector<int> section;  // right arrow -> F arrow
  std::vector<int> act;      // down arrow d, F arrow h in H at s d: act[d * |F| + h]; -1 elsewhere

  int action(int d, int h) const { return act[static_cast<std::size_t>(d) * F.num_arrows() + h]; }
  bool in_H(int f) const { return right.is_unit(pi[f]); }
};

// Malformed on wrong sizes or shapes; fills the section when empty.
void prepare(FiniteCoreExtension& E);

struct FiniteCoreOps {
  using F = int;
  using D = int;
  using R = int;
  const FiniteCoreExtension* E = nullptr;

  int f_mul(int a, int b) const { return E->F.mul(a, b); }
  int f_inv(int a) const { return E->F.inv[a]; }
  int f_unit(int x) const { return E->F.unit[x]; }
  int f_s(int a) const { return E->F.s(a); }
  int f_t(int a) const { return E->F.t(a); }
  bool f_eq(int a, int b) const { return a == b; }
  int d_mul(int a, int b) const { return E->down.mul(a, b); }
  int d_inv(int a) const { return E->down.inv[a]; }
  int d_unit(int x) const { return E->down.unit[x]; }
  int d_s(int a) const { return E->down.s(a); }
  int d_t(int a) const { return E->down.t(a); }
  bool d_eq(int a, int b) const { return a == b; }
  int r_mul(int a, int b) const { return E->right.mul(a, b); }
  int r_s(int a) const { return E->right.s(a); }
  int r_t(int a) const { return E->right.t(a); }
  bool r_eq(int a, int b) const { return a == b; }
  bool r_is_unit(int a) const { return E->right.is_unit(a); }
  int pi(int f) const { return E->pi[f]; }
  int tau(int f) const { return E->tau[f]; }
  int section(int r) const { return E->section[r]; }
  int act(int d, int h) const;  // throws NotComposable outside the table
  std::string show_f(int a) const { return E->F.arrows[a].id; }
  std::string show_d(int a) const { return E->down.arrows[a].id; }
  std::string show_r(int a) const { return E->right.arrows[a].id; }
};

// Exhaustive checks of the core extension axioms.
Report validate_core_extension(const FiniteCoreExtension& E);
// Exhaustive groupoid axioms and interchange of the double groupoid.
Report double_check(const FiniteCoreExtension& E);
// Exhaustive core recovery: core squares biject with F, and F, pi, tau and
// the action are read back from square operations.
Report core_recover_check(const FiniteCoreExtension& E);
std::size_t count_squares(const FiniteCoreExtension& E);

// The fat extension of a unital ruth as a core extension: F the fat
// groupoid, G_right = G, G_down the chain isomorphisms between fibers,
// F -> G_down the representation and the action h -> C h V^-1.
struct FatCoreOps {
  using F = FatElement;
  using D = GLFrame;  // chain isomorphism from x to y
  using R = int;
  const Ruth* ruth = nullptr;
  std::vector<FatElement> sigma;
  std::vector<CanonicalForm> forms;
  // Mutation hook: the action becomes h -> (1 + twist) C h V^-1.
  Rational twist = 0;

  FatElement f_mul(const FatElement& a, const FatElement& b) const { return fat_product(*ruth, a, b); }
  FatElement f_inv(const FatElement& a) const { return fat_inverse(*ruth, a); }
  FatElement f_unit(int x) const { return fat_unit(*ruth, x); }
  int f_s(const FatElement& a) const { return ruth->G.s(a.g); }
  int f_t(const FatElement& a) const { return ruth->G.t(a.g); }
  bool f_eq(const FatElement& a, const FatElement& b) const { return fat_equal(a, b); }
  GLFrame d_mul(const GLFrame& a, const GLFrame& b) const { return glM_product(a, b); }
  GLFrame d_inv(const GLFrame& a) const { return gl_inverse(a); }
  GLFrame d_unit(int x) const { return gl_identity(ruth->cx, x); }
  int d_s(const GLFrame& a) const { return a.x; }
  int d_t(const GLFrame& a) const { return a.y; }
  bool d_eq(const GLFrame& a, const GLFrame& b) const { return a == b; }
  int r_mul(int a, int b) const { return ruth->G.mul(a, b); }
  int r_s(int a) const { return ruth->G.s(a); }
  int r_t(int a) const { return ruth->G.t(a); }
  bool r_eq(int a, int b) const { return a == b; }
  bool r_is_unit(int a) const { return ruth->G.is_unit(a); }
  int pi(const FatElement& a) const { return a.g; }
  GLFrame tau(const FatElement& a) const;
  FatElement section(int r) const { return sigma[r]; }
  FatElement act(const GLFrame& d, const FatElement& h) const;
  std::string show_f(const FatElement& a) const;
  std::string show_d(const GLFrame& a) const;
  std::string show_r(int a) const { return ruth->G.arrows[a].id; }

  int sample_object(Rng& rng) const;
  int sample_R_from(int x, Rng& rng) const;
  FatElement sample_F_over(int r, Rng& rng) const { return random_fat(*ruth, r, rng); }
  // A random chain isomorphism into y from an object with the same fiber
  // dimensions and the same rank.
  GLFrame sample_D_to(int y, Rng& rng) const;
  FatElement sample_H(int x, Rng& rng) const { return random_fat(*ruth, ruth->G.unit[x], rng); }
};

// Throws StructureNotVerified or NotUnital.
FatCoreOps fat_core_ops(const Ruth& R);

// Named finite core extensions: inner-s3, crossed-z3-s3, trivial-h-z2.
FiniteCoreExtension build_core_example(const std::string& name);
std::vector<std::string> core_example_names();

}  // namespace fatlab
