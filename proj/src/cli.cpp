#include "fatlab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "fatlab/corext.hpp"
#include "fatlab/fixtures.hpp"
#include "fatlab/glpb.hpp"
#include "fatlab/infinitesimal.hpp"

namespace fatlab {

namespace {

constexpr std::size_t kMaxWitnesses = 3;

struct Check {
  std::string name, proposition;
  std::function<Report(Rng&)> run;
};

int heavy(int trials) { return std::max(1, trials / 2); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int random_arrow_from(const FiniteGroupoid& G, int x, Rng& rng) {
  std::vector<int> out;
  for (int g = 0; g < G.num_arrows(); ++g)
    if (G.s(g) == x) out.push_back(g);
  return out[rng.below(out.size())];
}

// g, h, k composable left to right, with g arbitrary.
std::vector<int> random_path(const FiniteGroupoid& G, int len, Rng& rng) {
  std::vector<int> p{static_cast<int>(rng.below(G.num_arrows()))};
  while (static_cast<int>(p.size()) < len) p.push_back(G.inv[random_arrow_from(G, G.s(p.back()), rng)]);
  return p;
}

// Groupoid checks.

Report simplicial_check(const FiniteGroupoid& G, int max_degree) {
  Report rep;
  for (int n = 1; n <= max_degree; ++n)
    for (const auto& t : nerve(G, n)) {
      for (int l = 1; n >= 2 && l <= n; ++l)
        for (int k = 0; k < l; ++k) {
          ++rep.checked;
          if (!(face(G, face(G, t, l), k) == face(G, face(G, t, k), l - 1)))
            rep.fail("simplicial identity d_k d_l = d_(l-1) d_k", describe(G, t) + " k=" + std::to_string(k) +
                                                                     " l=" + std::to_string(l));
        }
      for (int k = 0; k <= n; ++k) {
        ++rep.checked;
        if (!(face(G, degeneracy(G, t, k), k) == t)) rep.fail("d_k u_k = id", describe(G, t) + " k=" + std::to_string(k));
      }
    }
  return rep;
}

void add_groupoid_checks(std::vector<Check>& out, const FiniteGroupoid& G, const std::string& tag) {
  out.push_back({"groupoid/axioms" + tag, "groupoid axioms: units, inverses and associativity",
                 [G](Rng&) { return validate(G); }});
  out.push_back({"groupoid/simplicial" + tag, "simplicial identities of the nerve", [G](Rng&) {
                   if (!validate(G).ok()) throw Error(ErrorKind::StructureNotVerified, "groupoid axioms fail");
                   return simplicial_check(G, std::min(nerve_cap(), 4));
                 }});
}

// Ruth checks.

void add_ruth_checks(std::vector<Check>& out, const Ruth& R, const std::string& tag) {
  out.push_back({"ruth/structure" + tag, "structure equations of a split 2-term representation up to homotopy",
                 [R](Rng&) { return check_structure(R); }});
  if (R.unital)
    out.push_back({"ruth/unital" + tag, "unitality: R1 of a unit is the identity and R2 vanishes on units",
                   [R](Rng&) { return check_unital(R); }});
  out.push_back({"ruth/maurer-cartan" + tag, "d + R1 + R2 is a Maurer-Cartan element of the deformation dgLa",
                 [R](Rng&) {
                   Report rep;
                   ++rep.checked;
                   auto res = mc_residual(R);
                   if (!dgla_is_zero(res)) rep.fail("delta R + 1/2 [R, R] = 0", dgla_witness(R, res));
                   return rep;
                 }});
  out.push_back({"ruth/delta-squared" + tag, "the total differential squares to zero", [R](Rng&) {
                   Report rep;
                   for (int n = 0; n + 2 <= nerve_cap() + 1; ++n) {
                     ++rep.checked;
                     Matrix sq = differential_matrix(R, n + 1) * differential_matrix(R, n);
                     if (!sq.is_zero()) rep.fail("delta o delta = 0", "degree " + std::to_string(n));
                   }
                   return rep;
                 }});
  if (R.unital)
    out.push_back({"ruth/normalization" + tag, "delta preserves normalized cochains of a unital ruth",
                   [R](Rng&) { return normalization_check(R, nerve_cap() - 1); }});
  out.push_back({"ruth/contraction" + tag, "[delta, eta] = 1 in degrees >= 2 (vanishing for proper groupoids)",
                 [R](Rng&) {
                   Report rep;
                   for (int n = 2; n <= nerve_cap(); ++n) rep.merge(contraction_check(R, n));
                   return rep;
                 }});
}

// Fat checks.

Report fat_axioms(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  for (int i = 0; i < samples; ++i) {
    auto p = random_path(R.G, 3, rng);
    FatElement a = random_fat(R, p[0], rng), b = random_fat(R, p[1], rng), c = random_fat(R, p[2], rng);
    const std::string w = "h=" + to_string(a.h) + "," + to_string(b.h) + "," + to_string(c.h);
    ++rep.checked;
    if (!fat_equal(fat_product(R, fat_product(R, a, b), c), fat_product(R, a, fat_product(R, b, c))))
      rep.fail("fat product is associative", w);
    FatElement ai = fat_inverse(R, a);
    if (ai.h != fat_inverse_alt(R, a)) rep.fail("the two closed forms of the inverse agree", w);
    if (R.unital) {
      const int s = R.G.s(a.g), t = R.G.t(a.g);
      if (!fat_equal(fat_product(R, fat_unit(R, t), a), a) || !fat_equal(fat_product(R, a, fat_unit(R, s)), a))
        rep.fail("fat units", w);
      if (!fat_equal(fat_product(R, a, ai), fat_unit(R, t)) || !fat_equal(fat_product(R, ai, a), fat_unit(R, s)))
        rep.fail("fat inverses", w);
    }
  }
  return rep;
}

Report fat_rep_check(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  for (int i = 0; i < samples; ++i) {
    auto p = random_path(R.G, 2, rng);
    FatElement a = random_fat(R, p[0], rng), b = random_fat(R, p[1], rng);
    ++rep.checked;
    auto pa = fat_rep(R, a), pb = fat_rep(R, b), pab = fat_rep(R, fat_product(R, a, b));
    if (pab.C != pa.C * pb.C || pab.V != pa.V * pb.V)
      rep.fail("the representation of the fat groupoid is a functor", "h=" + to_string(a.h) + "," + to_string(b.h));
    if (R.d(R.G.t(a.g)) * pa.C != pa.V * R.d(R.G.s(a.g)))
      rep.fail("fat elements act by chain maps", "h=" + to_string(a.h));
  }
  return rep;
}

Report conjugation_sample(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  if (!R.unital) throw Error(ErrorKind::NotUnital, "conjugation needs units");
  for (int i = 0; i < samples; ++i) {
    int g = static_cast<int>(rng.below(R.G.num_arrows()));
    FatElement H = random_fat(R, g, rng);
    FatElement K = random_fat(R, R.G.unit[R.G.s(g)], rng);
    ++rep.checked;
    if (!conjugation_check(R, H, K.h))
      rep.fail("H (1, k) H^-1 = (1, phiC k phiV^-1)", "h=" + to_string(H.h) + " k=" + to_string(K.h));
  }
  return rep;
}

Report pairing_sample(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  for (int i = 0; i < samples; ++i) {
    int g = static_cast<int>(rng.below(R.G.num_arrows()));
    FatElement H = random_fat(R, g, rng);
    const int s = R.G.s(g);
    Matrix T = rng.matrix(R.c(s), R.v(s));
    ++rep.checked;
    auto sol = pairing_solve(R, H, T);
    const std::string w = "h=" + to_string(H.h) + " T=" + to_string(T);
    if (!sol.unique) rep.fail("the fat pairing is non-degenerate: unique dual element", w);
    auto cf = pairing_closed_form(R, H, T);
    if (cf.A != sol.omega.A || cf.B != sol.omega.B) rep.fail("closed form of the dual element", w);
  }
  return rep;
}

Report splitting_check(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  const int rounds = std::max(1, samples / 20);
  for (int i = 0; i <= rounds; ++i) {
    std::vector<FatElement> lifts;
    for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(i == 0 ? certify_fiber(R, g) : random_fat(R, g, rng));
    ++rep.checked;
    Ruth S = ruth_from_splitting(R, lifts);
    if (!ruth_equal(S, R)) rep.fail("a splitting of the fat extension recovers (d, R1, R2)", i == 0 ? "certified lifts" : "random lifts");
  }
  return rep;
}

Report vb_check(const Ruth& R, Rng& rng, int samples) {
  Report rep;
  VBGroupoid vb = vb_structure(R);
  ++rep.checked;
  if (!ruth_equal(ruth_from_vb(vb), R)) rep.fail("the split VB-groupoid determines the ruth", "ruth_from_vb");
  for (int i = 0; i < samples; ++i) {
    auto p = random_path(R.G, 2, rng);
    FatElement a = random_fat(R, p[0], rng), b = random_fat(R, p[1], rng);
    ++rep.checked;
    auto lhs = vb_section_product(vb, vb_section(vb, a), vb_section(vb, b));
    auto rhs = vb_section(vb, fat_product(R, a, b));
    if (lhs.g != rhs.g || lhs.H != rhs.H)
      rep.fail("fat elements are the linear sections of the VB-groupoid", "h=" + to_string(a.h) + "," + to_string(b.h));
  }
  return rep;
}

void add_fat_checks(std::vector<Check>& out, const Ruth& R, const std::string& tag, int trials) {
  out.push_back({"fat/axioms" + tag, "the fat extension is a groupoid",
                 [R, trials](Rng& rng) { return fat_axioms(R, rng, trials); }});
  out.push_back({"fat/representation" + tag, "the fat groupoid acts on C -> V by chain maps, functorially",
                 [R, trials](Rng& rng) { return fat_rep_check(R, rng, trials); }});
  if (R.unital)
    out.push_back({"fat/conjugation" + tag, "conjugation by the fat groupoid on H(V,C) is the induced action",
                   [R, trials](Rng& rng) { return conjugation_sample(R, rng, trials); }});
  out.push_back({"fat/pairing" + tag, "the fat pairing is non-degenerate",
                 [R, trials](Rng& rng) { return pairing_sample(R, rng, trials); }});
  out.push_back({"fat/splitting" + tag, "splittings of the fat extension recover the ruth",
                 [R, trials](Rng& rng) { return splitting_check(R, rng, trials); }});
  out.push_back({"fat/vb" + tag, "equivalence of split VB-groupoids and fat extensions",
                 [R, trials](Rng& rng) { return vb_check(R, rng, trials); }});
}

bool morphism_equal(const FatMorphism& a, const FatMorphism& b) {
  return a.PhiC == b.PhiC && a.PhiV == b.PhiV && a.mu == b.mu;
}

void add_morphism_checks(std::vector<Check>& out, const MorphismDoc& d, int trials) {
  out.push_back({"fat/morphism", "(PhiC, PhiV, mu) is a morphism of ruths",
                 [d, trials](Rng& rng) { return morphism_check(d.source, d.target, d.m, rng, trials); }});
  out.push_back({"fat/morphism-vb", "morphisms of ruths are the VB-groupoid maps", [d](Rng&) {
                   Report rep = vb_map_check(d.source, d.target, vb_map(d.source, d.target, d.m));
                   ++rep.checked;
                   if (!morphism_equal(morphism_from_vb_map(d.source, d.target, vb_map(d.source, d.target, d.m)), d.m))
                     rep.fail("morphism -> VB map -> morphism is the identity", "morphism_from_vb_map");
                   return rep;
                 }});
}

// GL / PB checks.

RuthCochain random_cochain(const Ruth& R, int n, Rng& rng) {
  CochainSpace sp(R, n);
  return sp.unflatten(rng.vector(sp.dim()));
}

void add_glpb_checks(std::vector<Check>& out, const Ruth& R, int trials) {
  const int n = heavy(trials);
  out.push_back({"glpb/gl-interchange", "interchange law of the general linear 2-groupoid",
                 [R, trials](Rng& rng) { return gl_interchange_check(R.cx, rng, trials); }});
  if (!R.unital) return;
  out.push_back({"glpb/pb-axioms", "the general linear PB-groupoid is a groupoid with a principal 2-action",
                 [R, n](Rng& rng) { return pb_check(pb_build(R), rng, n); }});
  out.push_back({"glpb/extension", "the PB-groupoid is an extension of G by GL(C,V)",
                 [R, n](Rng& rng) { return pb_ses_check(pb_build(R), rng, n); }});
  out.push_back({"glpb/fat-recovery", "the PB-groupoid determines the fat extension", [R](Rng&) {
                   Report rep;
                   ++rep.checked;
                   auto lifts = default_lifts(R);
                   if (!ruth_equal(pb_to_fat(pb_build(R), lifts), R))
                     rep.fail("fat -> PB -> fat is the identity", "default lifts");
                   return rep;
                 }});
  out.push_back({"glpb/equivariance", "invariant cochains are the GL-equivariant cochains on the PB-groupoid",
                 [R, n](Rng& rng) {
                   PBGroupoid P = pb_build(R);
                   Report rep;
                   for (int deg = 1; deg <= 2; ++deg) {
                     RuthCochain f = random_cochain(R, deg, rng);
                     rep.merge(gl_equiv_check(P, pb_pullback(P, f), f, rng, std::max(1, n / 2)));
                   }
                   return rep;
                 }});
}

// Core extension checks.

Report kernel_listing_check(const CoreDoc& doc) {
  Report rep;
  if (!doc.H) return rep;
  const auto& E = doc.E;
  for (int x = 0; x < E.F.num_objects(); ++x) {
    ++rep.checked;
    std::set<int> listed((*doc.H)[x].begin(), (*doc.H)[x].end()), kernel;
    for (int f = 0; f < E.F.num_arrows(); ++f)
      if (E.F.s(f) == x && E.F.t(f) == x && E.in_H(f)) kernel.insert(f);
    if (listed != kernel) rep.fail("H is the kernel of F -> G_right", "object " + E.F.objects[x]);
  }
  return rep;
}

void add_core_checks(std::vector<Check>& out, const CoreDoc& doc) {
  const auto& E = doc.E;
  out.push_back({"corext/axioms", "core extension axioms: exactness, action by automorphisms, equivariance, Peiffer",
                 [E](Rng&) { return validate_core_extension(E); }});
  if (doc.H)
    out.push_back({"corext/kernel", "H is the kernel of F -> G_right", [doc](Rng&) { return kernel_listing_check(doc); }});
  out.push_back({"corext/double", "the squares form a double groupoid satisfying the interchange law",
                 [E](Rng&) { return double_check(E); }});
  out.push_back({"corext/recovery", "the core of the double groupoid recovers the core extension",
                 [E](Rng&) { return core_recover_check(E); }});
}

void add_fat_core_checks(std::vector<Check>& out, const Ruth& R, int trials) {
  if (!R.unital) return;
  const int n = heavy(trials);
  out.push_back({"corext/fat-extension", "the fat extension is a core extension over the chain isomorphisms",
                 [R, n](Rng& rng) { return sampled_extension_check(fat_core_ops(R), rng, n); }});
  out.push_back({"corext/fat-double", "the fat core extension defines a double groupoid (interchange law)",
                 [R, n](Rng& rng) {
                   DoubleGroupoid<FatCoreOps> D(fat_core_ops(R));
                   return sampled_double_check(D, rng, n);
                 }});
  out.push_back({"corext/fat-recovery", "the core of the fat double groupoid recovers the fat extension",
                 [R, n](Rng& rng) {
                   DoubleGroupoid<FatCoreOps> D(fat_core_ops(R));
                   return sampled_core_check(D, rng, n);
                 }});
}

// Lie checks.

void add_lie_checks(std::vector<Check>& out, const LieRuth& R, int trials) {
  out.push_back({"lie/algebra", "the structure constants define a Lie algebra", [R](Rng&) { return lie_check(R.g); }});
  out.push_back({"lie/structure", "structure equations of a 2-term representation up to homotopy of a Lie algebra",
                 [R](Rng&) { return la_check(R); }});
  out.push_back({"lie/jacobi", "the fat bracket satisfies the Jacobi identity", [R](Rng&) {
                   check_shapes(R);
                   return fat_jacobi_check(R);
                 }});
  out.push_back({"lie/delta-squared", "the Chevalley-Eilenberg differential squares to zero",
                 [R](Rng&) { return ce_square_check(R, 3); }});
  out.push_back({"lie/lift", "forms with values in the ruth are the invariant forms on the fat algebra",
                 [R, trials](Rng& rng) { return lift_check(R, 2, rng, heavy(trials)); }});
}

bool suite_selected(const std::string& suite, const std::string& name) {
  return suite == "all" || name.rfind(suite + "/", 0) == 0;
}

// Route helpers.

bool perturb(std::vector<Matrix>& ms) {
  for (auto& m : ms)
    if (!m.empty()) {
      m(0, 0) += 1;
      return true;
    }
  return false;
}

std::string perturb_ruth(Ruth& S) {
  if (perturb(S.R2)) return "perturbed an entry of the recovered R2";
  if (perturb(S.R1C)) return "perturbed an entry of the recovered R1C";
  if (perturb(S.R1V)) return "perturbed an entry of the recovered R1V";
  return "nothing to perturb: all fibers are zero";
}

void compare_ruth(Report& rep, const Ruth& R, const Ruth& S, const std::string& route) {
  ++rep.checked;
  if (ruth_equal(R, S)) return;
  std::string w;
  for (int g = 0; g < R.G.num_arrows() && w.empty(); ++g) {
    if (R.R1C[g] != S.R1C[g]) w = "R1C at " + R.G.arrows[g].id;
    else if (R.R1V[g] != S.R1V[g]) w = "R1V at " + R.G.arrows[g].id;
  }
  for (int g = 0; g < R.G.num_arrows() && w.empty(); ++g)
    for (int h = 0; h < R.G.num_arrows() && w.empty(); ++h)
      if (R.G.composable(g, h) && R.r2(g, h) != S.r2(g, h)) w = "R2 at " + R.G.arrows[g].id + "|" + R.G.arrows[h].id;
  rep.fail(route + " recovers the ruth exactly", w.empty() ? "differential" : w);
}

// Recovers F, pi, tau and the action from the core of D and compares them with
// the reference operations; the finite case runs over everything.
Report finite_core_roundtrip(const FiniteCoreExtension& E, const FiniteCoreExtension& built) {
  Report rep;
  FiniteCoreOps o{&built};
  DoubleGroupoid<FiniteCoreOps> D(o);
  auto find_core = [&](const Square<FiniteCoreOps>& sq) {
    for (int f = 0; f < built.F.num_arrows(); ++f)
      if (D.equal(sq, D.core(f))) return f;
    return -1;
  };
  for (int g = 0; g < E.F.num_arrows(); ++g) {
    ++rep.checked;
    auto cg = D.core(g);
    if (D.t_down(cg) != E.pi[g]) rep.fail("recovered F -> G_right", E.F.arrows[g].id);
    if (D.t_right(cg) != E.tau[g]) rep.fail("recovered F -> G_down", E.F.arrows[g].id);
    for (int h = 0; h < E.F.num_arrows(); ++h) {
      if (!E.F.composable(g, h)) continue;
      auto ch = D.core(h);
      auto prod = D.hprod(D.vprod(cg, D.unit_right(D.t_right(ch))), ch);
      if (find_core(prod) != E.F.mul(g, h)) rep.fail("recovered product of F", E.F.arrows[g].id + " * " + E.F.arrows[h].id);
    }
  }
  for (int d = 0; d < E.down.num_arrows(); ++d)
    for (int h = 0; h < E.F.num_arrows(); ++h) {
      if (E.action(d, h) < 0) continue;
      ++rep.checked;
      auto conj = D.vprod(D.vprod(D.unit_right(d), D.core(h)), D.vinv(D.unit_right(d)));
      if (find_core(conj) != E.action(d, h))
        rep.fail("recovered action of G_down on H", E.down.arrows[d].id + " on " + E.F.arrows[h].id);
    }
  return rep;
}

Report fat_core_roundtrip(const FatCoreOps& ref, const FatCoreOps& built, Rng& rng, int samples) {
  Report rep;
  DoubleGroupoid<FatCoreOps> D(built);
  for (int i = 0; i < samples; ++i) {
    auto h = ref.sample_F_over(ref.sample_R_from(ref.sample_object(rng), rng), rng);
    auto g = ref.sample_F_over(ref.sample_R_from(ref.r_t(ref.pi(h)), rng), rng);
    auto d = ref.sample_D_to(ref.sample_object(rng), rng);
    auto k = ref.sample_H(d.x, rng);
    ++rep.checked;
    auto cg = D.core(g), ch = D.core(h);
    if (!D.equal(D.hprod(D.vprod(cg, D.unit_right(D.t_right(ch))), ch), D.core(ref.f_mul(g, h))))
      rep.fail("recovered product of the fat groupoid", ref.show_f(g) + " * " + ref.show_f(h));
    if (D.t_down(cg) != ref.pi(g)) rep.fail("recovered projection to G", ref.show_f(g));
    if (!(D.t_right(cg) == ref.tau(g))) rep.fail("recovered representation", ref.show_f(g));
    auto conj = D.vprod(D.vprod(D.unit_right(d), D.core(k)), D.vinv(D.unit_right(d)));
    if (!D.equal(conj, D.core(ref.act(d, k))))
      rep.fail("recovered action on H(V,C)", ref.show_d(d) + " on " + ref.show_f(k));
  }
  return rep;
}

// Examples.

Ruth flat_pair2() {
  // d invertible, R1V(g_yx) = A_y A_x^-1 and R1C = d^-1 R1V d: a genuine action.
  FiniteGroupoid G = pair_groupoid(2);
  Rng rng(derive_seed(0, "pair2-flat", 0));
  TwoTermComplex cx;
  std::vector<Matrix> A;
  for (int x = 0; x < 2; ++x) {
    cx.d.push_back(rng.invertible(2));
    A.push_back(rng.invertible(2));
  }
  Ruth R = empty_ruth(G, cx);
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    R.R1V[g] = A[t] * inverse(A[s]);
    R.R1C[g] = inverse(cx.d[t]) * R.R1V[g] * cx.d[s];
  }
  R.unital = true;
  return R;
}

Ruth unit2() {
  FiniteGroupoid G = unit_groupoid(2);
  TwoTermComplex cx;
  cx.d.push_back(Matrix{{1, 0}});
  cx.d.push_back(Matrix(2, 1));
  Ruth R = empty_ruth(G, cx);
  for (int g = 0; g < G.num_arrows(); ++g) {
    R.R1C[g] = Matrix::identity(R.c(G.s(g)));
    R.R1V[g] = Matrix::identity(R.v(G.s(g)));
  }
  return R;
}

template <class Make>
Ruth first_nonflat(const std::string& name, Make make) {
  for (std::uint64_t i = 0;; ++i) {
    Rng rng(derive_seed(0, name, i));
    Ruth R = make(rng);
    bool inv = true;
    for (const auto& m : R.R1V) inv = inv && invertible(m);
    if (!is_flat(R) && inv) return R;
  }
}

}  // namespace

std::vector<std::string> cli_example_names() {
  auto names = example_names();
  for (const auto& n : lie_example_names())
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  std::sort(names.begin(), names.end());
  return names;
}

Json example_document(const std::string& name) {
  if (name == "pair2") return groupoid_to_json(pair_groupoid(2));
  if (name == "pair3") return groupoid_to_json(pair_groupoid(3));
  if (name == "cyclic2") return groupoid_to_json(cyclic_groupoid(2));
  if (name == "cyclic3") return groupoid_to_json(cyclic_groupoid(3));
  if (name == "flat-z2") return ruth_to_json(sign_ruth_z2());
  if (name == "pair2-flat") return ruth_to_json(flat_pair2());
  if (name == "unit2") return ruth_to_json(unit2());
  if (name == "empty-pair2") return ruth_to_json(trivial_ruth(pair_groupoid(2), Matrix(0, 0)));
  if (name == "nonflat-pair2")
    return ruth_to_json(first_nonflat(name, [](Rng& rng) { return d_invertible_ruth(pair_groupoid(2), 2, rng); }));
  if (name == "nonflat-cyclic3")
    return ruth_to_json(first_nonflat(name, [](Rng& rng) { return random_ruth(cyclic_groupoid(3), 2, 1, rng); }));
  if (name == "morphism-pair2") {
    Rng rng(derive_seed(0, name, 0));
    MorphismDoc d;
    d.source = random_ruth(pair_groupoid(2), 2, 1, rng);
    d.m = random_gauge(d.source, rng);
    d.target = gauge_transform(d.source, d.m);
    return morphism_to_json(d);
  }
  for (const auto& n : core_example_names())
    if (n == name) return core_to_json(build_core_example(name));
  if (name == "sl2") return lie_ruth_to_json(build_lie_example("sl2-std"));
  for (const auto& n : lie_example_names())
    if (n == name) return lie_ruth_to_json(build_lie_example(name));
  throw Error(ErrorKind::BadParams, "unknown example '" + name + "'");
}

std::vector<CheckResult> run_checks(const Document& doc, const CheckOptions& opt) {
  static const std::set<std::string> suites{"groupoid", "ruth", "fat", "glpb", "corext", "lie", "all"};
  if (!suites.count(opt.suite)) throw Error(ErrorKind::BadParams, "unknown suite '" + opt.suite + "'");
  std::vector<Check> checks;
  switch (doc.kind) {
    case DocKind::Groupoid:
      add_groupoid_checks(checks, doc.groupoid, "");
      break;
    case DocKind::Ruth:
      add_groupoid_checks(checks, doc.ruth->G, "");
      add_ruth_checks(checks, *doc.ruth, "");
      add_fat_checks(checks, *doc.ruth, "", opt.trials);
      add_glpb_checks(checks, *doc.ruth, opt.trials);
      add_fat_core_checks(checks, *doc.ruth, opt.trials);
      break;
    case DocKind::Morphism:
      add_groupoid_checks(checks, doc.morphism->source.G, "");
      add_ruth_checks(checks, doc.morphism->source, "[source]");
      add_ruth_checks(checks, doc.morphism->target, "[target]");
      add_morphism_checks(checks, *doc.morphism, opt.trials);
      break;
    case DocKind::CoreExtension:
      add_groupoid_checks(checks, doc.core->E.F, "[F]");
      add_groupoid_checks(checks, doc.core->E.down, "[down]");
      add_groupoid_checks(checks, doc.core->E.right, "[right]");
      add_core_checks(checks, *doc.core);
      break;
    case DocKind::LieRuth:
      add_lie_checks(checks, *doc.lie, opt.trials);
      break;
  }
  std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    if (!suite_selected(opt.suite, c.name)) continue;
    Rng rng(derive_seed(opt.seed, c.name, 0));
    CheckResult r{c.name, c.proposition, {}};
    try {
      r.report = c.run(rng);
    } catch (const Error& e) {
      r.report.fail(c.proposition, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> route_names() { return {"core-double-core", "fat-pb-fat", "ruth-fat-ruth", "ruth-vb-fat-ruth"}; }

RouteResult run_route(const Document& doc, const std::string& route, bool inject_fault, std::uint64_t seed,
                      int trials) {
  const auto names = route_names();
  if (std::find(names.begin(), names.end(), route) == names.end())
    throw Error(ErrorKind::BadParams, "unknown route '" + route + "'");
  RouteResult res;
  Rng rng(derive_seed(seed, "roundtrip/" + route, 0));
  const bool ruth_doc = doc.kind == DocKind::Ruth;
  if (route == "core-double-core") {
    if (doc.kind == DocKind::CoreExtension) {
      const auto& E = doc.core->E;
      if (!validate_core_extension(E).ok())
        throw Error(ErrorKind::StructureNotVerified, "the core extension does not pass validation");
      FiniteCoreExtension built = E;
      if (inject_fault) {
        // Replace one action value by a different element of the same fiber.
        bool done = false;
        for (std::size_t i = 0; i < built.act.size() && !done; ++i) {
          if (built.act[i] < 0) continue;
          const int v = built.act[i];
          for (int f = 0; f < built.F.num_arrows() && !done; ++f)
            if (f != v && built.in_H(f) && built.F.s(f) == built.F.s(v)) {
              built.act[i] = f;
              res.note = "changed one entry of the action table before building the double groupoid";
              done = true;
            }
        }
        if (!done) res.note = "nothing to perturb: H is trivial";
      }
      try {
        res.report = finite_core_roundtrip(E, built);
      } catch (const Error& e) {
        res.report.fail("core extension -> double groupoid -> core extension", e.what());
      }
      return res;
    }
    if (!ruth_doc) throw Error(ErrorKind::BadParams, "route core-double-core needs a core-extension or ruth document");
    FatCoreOps ref = fat_core_ops(*doc.ruth), built = ref;
    if (inject_fault) {
      built.twist = 1;
      res.note = "doubled the action of G_down on H(V,C) before building the double groupoid";
    }
    try {
      res.report = fat_core_roundtrip(ref, built, rng, std::max(1, trials / 2));
    } catch (const Error& e) {
      res.report.fail("fat extension -> double groupoid -> fat extension", e.what());
    }
    return res;
  }
  if (!ruth_doc) throw Error(ErrorKind::BadParams, "route " + route + " needs a ruth document");
  const Ruth& R = *doc.ruth;
  auto structure = check_structure(R);
  if (!structure.ok()) throw Error(ErrorKind::StructureNotVerified, structure.violations.front().property);
  if (route == "ruth-fat-ruth") {
    std::vector<FatElement> lifts;
    for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(random_fat(R, g, rng));
    Ruth S = ruth_from_splitting(R, lifts);
    if (inject_fault) res.note = perturb_ruth(S);
    compare_ruth(res.report, R, S, "ruth -> fat -> ruth");
    // With the zero splitting, when it exists, R2 is read off directly.
    bool zero_ok = true;
    for (const auto& m : R.R1V) zero_ok = zero_ok && invertible(m);
    if (zero_ok && !inject_fault) {
      ++res.report.checked;
      if (splitting_R2(R, zero_splitting(R)) != R.R2) res.report.fail("the zero splitting recovers R2", "splitting_R2");
    }
  } else if (route == "ruth-vb-fat-ruth") {
    VBGroupoid vb = vb_structure(R);
    Ruth S = ruth_from_vb(vb);
    if (inject_fault) res.note = perturb_ruth(S);
    compare_ruth(res.report, R, S, "ruth -> VB -> ruth");
    // The fat elements of the VB-groupoid, read back through a splitting.
    std::vector<FatElement> lifts;
    for (int g = 0; g < R.G.num_arrows(); ++g) {
      FatElement H = random_fat(R, g, rng);
      VBSection sec = vb_section(vb, H);
      const std::size_t ct = R.c(R.G.t(g));
      lifts.push_back(make_fat(S, g, sec.H.block(0, 0, ct, sec.H.cols())));
    }
    compare_ruth(res.report, R, ruth_from_splitting(S, lifts), "ruth -> VB -> fat -> ruth");
  } else if (route == "fat-pb-fat") {
    PBGroupoid P = pb_build(R);
    std::vector<FatElement> lifts;
    for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(random_fat(R, g, rng));
    Ruth S = pb_to_fat(P, lifts);
    if (inject_fault) res.note = perturb_ruth(S);
    compare_ruth(res.report, ruth_from_splitting(R, lifts), S, "fat -> PB -> fat");
  }
  return res;
}

namespace {

Json report_json(const std::vector<CheckResult>& results) {
  Json checks = Json::array();
  for (const auto& r : results) {
    Json c;
    c["name"] = r.name;
    c["proposition"] = r.proposition;
    c["status"] = r.report.ok() ? "pass" : "fail";
    c["checked"] = r.report.checked;
    if (!r.report.ok()) {
      Json v = Json::array();
      for (std::size_t i = 0; i < r.report.violations.size() && i < kMaxWitnesses; ++i)
        v.push_back({{"property", r.report.violations[i].property}, {"witness", r.report.violations[i].witness}});
      c["violations"] = v;
      c["violation_count"] = r.report.violations.size();
    }
    checks.push_back(c);
  }
  return checks;
}

void report_text(std::ostream& out, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    out << "  " << (r.report.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.report.checked << " checked): "
        << r.proposition << "\n";
    for (std::size_t i = 0; i < r.report.violations.size() && i < kMaxWitnesses; ++i)
      out << "      violated: " << r.report.violations[i].property << "\n      witness: " << r.report.violations[i].witness
          << "\n";
  }
}

struct Globals {
  std::uint64_t seed = 0;
  int trials = 200;
  int max_degree = 2;
  std::string format = "text";
};

int cmd_check(const std::vector<std::string>& paths, const std::string& suite, const Globals& g, std::ostream& out,
              std::ostream& err) {
  std::vector<Document> docs;
  for (const auto& p : paths) {
    try {
      docs.push_back(load_document(p));
    } catch (const Error& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    }
  }
  CheckOptions opt{suite, g.seed, g.trials};
  bool all_ok = true;
  Json files = Json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::vector<CheckResult> results;
    try {
      results = run_checks(docs[i], opt);
    } catch (const Error& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    }
    bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.report.ok(); });
    all_ok = all_ok && ok;
    const std::string fp = hex64(stable_hash(docs[i].text));
    files.push_back({{"path", paths[i]},
                     {"kind", doc_kind_name(docs[i].kind)},
                     {"fingerprint", fp},
                     {"status", ok ? "pass" : "fail"},
                     {"checks", report_json(results)}});
    text << "file " << paths[i] << " kind=" << doc_kind_name(docs[i].kind) << " fingerprint=" << fp << "\n";
    report_text(text, results);
  }
  if (g.format == "json") {
    Json j{{"command", "check"},
           {"suite", suite},
           {"seed", g.seed},
           {"trials", g.trials},
           {"nerve_cap", nerve_cap()},
           {"status", all_ok ? "pass" : "fail"},
           {"files", files}};
    out << dump(j);
  } else {
    out << "fatlab check suite=" << suite << " seed=" << g.seed << " trials=" << g.trials << " nerve_cap=" << nerve_cap()
        << "\n"
        << text.str() << "result: " << (all_ok ? "pass" : "fail") << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_cohomology(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err) {
  Document doc;
  try {
    doc = load_document(path);
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  Json j{{"command", "cohomology"}, {"path", path}, {"kind", doc_kind_name(doc.kind)}, {"max_degree", g.max_degree}};
  std::vector<std::size_t> dims;
  std::vector<int> contraction_degrees;
  try {
    if (g.max_degree < 0) throw Error(ErrorKind::BadParams, "--max-degree must be non-negative");
    if (doc.kind == DocKind::Ruth) {
      dims = cohomology_dims(*doc.ruth, g.max_degree);
      for (int n = 2; n <= g.max_degree; ++n) {
        if (!contraction_check(*doc.ruth, n).ok()) {
          err << "violation: [delta, eta] = 1 fails in degree " << n << "\n";
          return 1;
        }
        contraction_degrees.push_back(n);
      }
    } else if (doc.kind == DocKind::LieRuth) {
      dims = ce_cohomology(*doc.lie, g.max_degree);
    } else {
      err << "input error: cohomology needs a ruth or lie-ruth document, got " << doc_kind_name(doc.kind) << "\n";
      return 2;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StructureNotVerified) {
      err << "violation: " << e.what() << "\n";
      return 1;
    }
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  if (g.format == "json") {
    j["dims"] = dims;
    if (doc.kind == DocKind::Ruth) j["contraction_verified_degrees"] = contraction_degrees;
    out << dump(j);
  } else {
    for (std::size_t n = 0; n < dims.size(); ++n) out << "H^" << n << " = " << dims[n] << "\n";
    if (!contraction_degrees.empty())
      out << "H^k = 0 for 2 <= k <= " << g.max_degree << " confirmed by [delta, eta] = 1\n";
  }
  return 0;
}

int cmd_roundtrip(const std::string& path, const std::string& route, bool inject, const Globals& g, std::ostream& out,
                  std::ostream& err) {
  Document doc;
  RouteResult res;
  try {
    doc = load_document(path);
    res = run_route(doc, route, inject, g.seed, g.trials);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StructureNotVerified) {
      err << "violation: " << e.what() << "\n";
      return 1;
    }
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  const bool ok = res.report.ok();
  if (g.format == "json") {
    Json j{{"command", "roundtrip"}, {"path", path},          {"route", route},
           {"status", ok ? "pass" : "fail"}, {"checked", res.report.checked}};
    if (!res.note.empty()) j["fault"] = res.note;
    Json v = Json::array();
    for (std::size_t i = 0; i < res.report.violations.size() && i < kMaxWitnesses; ++i)
      v.push_back({{"property", res.report.violations[i].property}, {"witness", res.report.violations[i].witness}});
    if (!ok) j["violations"] = v;
    out << dump(j);
  } else {
    out << "roundtrip " << route << " on " << path << ": " << (ok ? "pass" : "fail") << " (" << res.report.checked
        << " checked)\n";
    if (!res.note.empty()) out << "  fault: " << res.note << "\n";
    for (std::size_t i = 0; i < res.report.violations.size() && i < kMaxWitnesses; ++i)
      out << "  violated: " << res.report.violations[i].property << "\n  witness: " << res.report.violations[i].witness
          << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fatlab: exact checks for 2-term representations up to homotopy and their fat extensions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--trials", g.trials, "samples per sampled check")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-degree", g.max_degree, "top cohomology degree")->capture_default_str();
  app.add_option("--format", g.format, "json or text")->capture_default_str()->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> paths;
  std::string suite = "all";
  auto* check = app.add_subcommand("check", "run verification suites on JSON files");
  check->add_option("paths", paths, "input files")->required();
  check->add_option("--suite", suite, "groupoid, ruth, fat, glpb, corext, lie or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"groupoid", "ruth", "fat", "glpb", "corext", "lie", "all"}));

  std::string coh_path;
  auto* coh = app.add_subcommand("cohomology", "dimensions of H^0 .. H^n");
  coh->add_option("path", coh_path, "input file")->required();

  std::string rt_path, route;
  bool inject = false;
  auto* rt = app.add_subcommand("roundtrip", "run an equivalence round trip and compare exactly");
  rt->add_option("path", rt_path, "input file")->required();
  rt->add_option("--route", route, "ruth-fat-ruth, ruth-vb-fat-ruth, fat-pb-fat or core-double-core")->required();
  rt->add_flag("--inject-fault", inject, "perturb an intermediate structure");

  std::string ex_name;
  bool ex_list = false;
  auto* ex = app.add_subcommand("examples", "print a built-in structure as JSON");
  ex->add_option("name", ex_name, "example name");
  ex->add_flag("--list", ex_list, "list the example names");

  for (auto* sub : {check, coh, rt, ex}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (check->parsed()) return cmd_check(paths, suite, g, out, err);
  if (coh->parsed()) return cmd_cohomology(coh_path, g, out, err);
  if (rt->parsed()) return cmd_roundtrip(rt_path, route, inject, g, out, err);
  if (ex_list) {
    for (const auto& n : cli_example_names()) out << n << "\n";
    return 0;
  }
  if (ex_name.empty()) {
    err << "input error: examples needs a name (see examples --list)\n";
    return 2;
  }
  try {
    out << dump(example_document(ex_name));
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fatlab
