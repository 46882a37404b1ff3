#include "fatlab/glpb.hpp"

namespace fatlab {

namespace {

Matrix one_plus_hd(const Matrix& h, const Matrix& d) { return Matrix::identity(h.rows()) + h * d; }
Matrix one_plus_dh(const Matrix& d, const Matrix& h) { return Matrix::identity(d.rows()) + d * h; }

std::string frame_text(const GLFrame& f) {
  return "Psi(" + std::to_string(f.y) + "<-" + std::to_string(f.x) + ") C=" + to_string(f.C) + " V=" + to_string(f.V);
}

NerveTuple random_tuple(const FiniteGroupoid& G, int n, Rng& rng) {
  NerveIndex idx(G, n);
  return idx[rng.below(idx.size())];
}

// A random object with the same fiber dimensions as x.
int random_twin(const TwoTermComplex& cx, int x, Rng& rng) {
  std::vector<int> twins;
  for (int y = 0; y < static_cast<int>(cx.d.size()); ++y)
    if (cx.c(y) == cx.c(x) && cx.v(y) == cx.v(x)) twins.push_back(y);
  return twins[rng.below(twins.size())];
}

}  // namespace

bool operator==(const GLFrame& a, const GLFrame& b) {
  return a.y == b.y && a.x == b.x && a.d == b.d && a.C == b.C && a.V == b.V;
}

bool operator==(const GL2Element& a, const GL2Element& b) { return a.frame == b.frame && a.h == b.h; }

GLFrame gl_identity(const TwoTermComplex& cx, int x) {
  return {x, x, cx.d[x], Matrix::identity(cx.c(x)), Matrix::identity(cx.v(x))};
}

Matrix gl_source_d(const GLFrame& f) { return inverse(f.V) * f.d * f.C; }

GLFrame gl_inverse(const GLFrame& f) { return {f.x, f.y, gl_source_d(f), inverse(f.C), inverse(f.V)}; }

GLFrame glM_product(const GLFrame& a, const GLFrame& b) {
  if (a.x != b.y || gl_source_d(a) != b.d) throw Error(ErrorKind::NotComposable, "frames: moment maps differ");
  return {a.y, b.x, a.d, a.C * b.C, a.V * b.V};
}

bool gl2_valid(const GL2Element& a) {
  const auto& f = a.frame;
  if (a.h.rows() != f.d.cols() || a.h.cols() != f.d.rows()) return false;
  return invertible(one_plus_dh(f.d, a.h)) && invertible(f.C) && invertible(f.V);
}

GLFrame gl2_vsource(const GL2Element& a) { return a.frame; }

GLFrame gl2_vtarget(const GL2Element& a) {
  const auto& f = a.frame;
  return {f.y, f.x, f.d, one_plus_hd(a.h, f.d) * f.C, one_plus_dh(f.d, a.h) * f.V};
}

GL2Element glG_vertical(const GL2Element& a, const GL2Element& b) {
  if (!(a.frame == gl2_vtarget(b))) throw Error(ErrorKind::NotComposable, "vertical: source of a is not the target of b");
  return {b.frame, h_product(a.frame.d, a.h, b.h)};
}

GL2Element gl2_vunit(const GLFrame& f) { return {f, Matrix(f.d.cols(), f.d.rows())}; }

GL2Element glG_horizontal(const GL2Element& a, const GL2Element& b) {
  GLFrame f = glM_product(a.frame, b.frame);
  Matrix k = a.frame.C * b.h * inverse(a.frame.V);
  return {f, h_product(a.frame.d, a.h, k)};
}

GL2Element gl2_hunit(int x, const Matrix& d) {
  return gl2_vunit({x, x, d, Matrix::identity(d.cols()), Matrix::identity(d.rows())});
}

GL2Matrices matrix_form(const GL2Element& a) {
  const auto& f = a.frame;
  const std::size_t c = f.d.cols(), v = f.d.rows();
  GL2Matrices m{Matrix::identity(c + v), fatlab::direct_sum(f.C, f.V)};
  m.pert.set_block(0, 0, one_plus_hd(a.h, f.d));
  m.pert.set_block(0, c, a.h);
  return m;
}

GL2Matrices matrix_horizontal(const GL2Matrices& a, const GL2Matrices& b) {
  return {a.pert * a.frame * b.pert * inverse(a.frame), a.frame * b.frame};
}

GLFrame random_frame(const TwoTermComplex& cx, int y, int x, const Matrix& d, Rng& rng) {
  if (cx.c(x) != cx.c(y) || cx.v(x) != cx.v(y)) throw Error(ErrorKind::ShapeMismatch, "frame between fibers of different dimension");
  return {y, x, d, rng.invertible(cx.c(y)), rng.invertible(cx.v(y))};
}

GL2Element random_gl2(const TwoTermComplex& cx, int y, int x, const Matrix& d, Rng& rng) {
  GLFrame f = random_frame(cx, y, x, d, rng);
  for (int attempt = 0; attempt < 64; ++attempt) {
    GL2Element a{f, rng.matrix(d.cols(), d.rows())};
    if (gl2_valid(a)) return a;
  }
  return gl2_vunit(f);
}

Report gl_interchange_check(const TwoTermComplex& cx, Rng& rng, int samples) {
  Report rep;
  if (cx.d.empty()) return rep;
  for (int i = 0; i < samples; ++i) {
    const int y = static_cast<int>(rng.below(cx.d.size()));
    const int x = random_twin(cx, y, rng), z = random_twin(cx, x, rng);
    // a2 : x -> y and b2 : z -> x at the bottom, a1 and b1 stacked on top.
    GL2Element a2 = random_gl2(cx, y, x, cx.d[y], rng);
    GL2Element b2 = random_gl2(cx, x, z, gl_source_d(a2.frame), rng);
    GL2Element a1{gl2_vtarget(a2), rng.matrix(cx.c(y), cx.v(y))};
    GL2Element b1{gl2_vtarget(b2), rng.matrix(cx.c(x), cx.v(x))};
    if (!gl2_valid(a1)) a1 = gl2_vunit(a1.frame);
    if (!gl2_valid(b1)) b1 = gl2_vunit(b1.frame);
    ++rep.checked;
    const std::string w = "a1.h=" + to_string(a1.h) + " a2.h=" + to_string(a2.h) + " b1.h=" + to_string(b1.h) +
                          " b2.h=" + to_string(b2.h);
    try {
      auto l = glG_horizontal(glG_vertical(a1, a2), glG_vertical(b1, b2));
      auto r = glG_vertical(glG_horizontal(a1, b1), glG_horizontal(a2, b2));
      if (!(l == r)) rep.fail("interchange law in GL(C,V)", w);
      auto m = matrix_horizontal(matrix_form(a2), matrix_form(b2));
      auto mm = matrix_form(glG_horizontal(a2, b2));
      if (!(m.pert == mm.pert && m.frame == mm.frame)) rep.fail("horizontal product agrees with block matrices", w);
      if (!(glG_vertical(a2, gl2_vunit(a2.frame)) == a2)) rep.fail("vertical unit", w);
      if (!(glG_horizontal(a2, gl2_hunit(x, gl_source_d(a2.frame))) == a2)) rep.fail("horizontal unit", w);
    } catch (const Error& e) {
      rep.fail("GL(C,V) products are defined on composable data", w + ": " + e.what());
    }
  }
  return rep;
}

bool pb_equal(const PBElement& a, const PBElement& b) { return fat_equal(a.H, b.H) && a.frame == b.frame; }

PBGroupoid pb_build(const Ruth& R) {
  auto rep = check_structure(R);
  if (!rep.ok()) throw Error(ErrorKind::StructureNotVerified, "pb_build: " + rep.violations.front().property);
  if (!R.unital) throw Error(ErrorKind::NotUnital, "pb_build needs a unital ruth");
  return {R};
}

GLFrame pb_source(const PBGroupoid&, const PBElement& p) { return p.frame; }

GLFrame pb_target(const PBGroupoid& P, const PBElement& p) {
  auto phi = fat_rep(P.R, p.H);
  const int t = P.R.G.t(p.H.g);
  return {t, p.frame.x, P.R.d(t), phi.C * p.frame.C, phi.V * p.frame.V};
}

Matrix pb_moment(const PBGroupoid&, const PBElement& p) { return gl_source_d(p.frame); }

PBElement pb_product(const PBGroupoid& P, const PBElement& a, const PBElement& b) {
  if (!(a.frame == pb_target(P, b))) throw Error(ErrorKind::NotComposable, "PB product: frame mismatch");
  return {fat_product(P.R, a.H, b.H), b.frame};
}

PBElement pb_unit(const PBGroupoid& P, const GLFrame& f) { return {fat_unit(P.R, f.y), f}; }

PBElement pb_inverse(const PBGroupoid& P, const PBElement& p) {
  return {fat_inverse(P.R, p.H), pb_target(P, p)};
}

PBElement pb_act(const PBGroupoid& P, const PBElement& p, const GL2Element& a) {
  if (a.frame.y != p.frame.x || a.frame.d != pb_moment(P, p))
    throw Error(ErrorKind::NotComposable, "2-action: moment maps differ");
  Matrix k = p.frame.C * a.h * inverse(p.frame.V);
  return {fat_act_right(P.R, p.H, k), glM_product(p.frame, a.frame)};
}

std::optional<ActionSolution> pb_solve_action(const PBGroupoid& P, const PBElement& p, const PBElement& q) {
  if (p.H.g != q.H.g || p.frame.y != q.frame.y) return std::nullopt;
  GLFrame f{p.frame.x, q.frame.x, pb_moment(P, p), inverse(p.frame.C) * q.frame.C, inverse(p.frame.V) * q.frame.V};
  auto phi = fat_rep(P.R, p.H);
  // phiC Psi^C X = (h_q - h_p) Psi^V
  bool unique = false;
  Matrix X;
  try {
    X = solve_matrix(phi.C * p.frame.C, (q.H.h - p.H.h) * p.frame.V, &unique);
  } catch (const Error&) {
    return std::nullopt;
  }
  ActionSolution s{{f, X}, unique};
  if (!gl2_valid(s.a) || !pb_equal(pb_act(P, p, s.a), q)) return std::nullopt;
  return s;
}

PBElement pb_random(const PBGroupoid& P, int g, Rng& rng) {
  const int s = P.R.G.s(g);
  const int x = random_twin(P.R.cx, s, rng);
  return {random_fat(P.R, g, rng), random_frame(P.R.cx, s, x, P.R.d(s), rng)};
}

PBElement pb_embed(const PBGroupoid& P, const Matrix& h, const GLFrame& f) {
  PBElement one = pb_unit(P, gl_identity(P.R.cx, f.y));
  return pb_act(P, one, {f, h});
}

PBElement pb_normalize(const PBGroupoid& P, const PBElement& p) {
  return pb_act(P, p, gl2_vunit(gl_inverse(p.frame)));
}

PBElement pb_quotient_product(const PBGroupoid& P, const PBElement& a, const PBElement& b) {
  // Move b along its orbit until its target is the source of a.
  GLFrame tb = pb_target(P, b);
  GLFrame move = glM_product(gl_inverse(tb), a.frame);
  PBElement b2 = pb_act(P, b, gl2_vunit(move));
  return pb_normalize(P, pb_product(P, a, b2));
}

Report pb_check(const PBGroupoid& P, Rng& rng, int samples) {
  const auto& R = P.R;
  const auto& G = R.G;
  Report rep;
  for (int i = 0; i < samples; ++i) {
    NerveTuple t = random_tuple(G, 3, rng);
    PBElement p3 = pb_random(P, t.arrows[2], rng);
    PBElement p2{random_fat(R, t.arrows[1], rng), pb_target(P, p3)};
    PBElement p1{random_fat(R, t.arrows[0], rng), pb_target(P, p2)};
    std::string w = "arrows " + describe(G, t);
    ++rep.checked;
    if (!pb_equal(pb_product(P, pb_product(P, p1, p2), p3), pb_product(P, p1, pb_product(P, p2, p3))))
      rep.fail("PB product is associative", w);
    if (!pb_equal(pb_product(P, p3, pb_unit(P, pb_source(P, p3))), p3) ||
        !pb_equal(pb_product(P, pb_unit(P, pb_target(P, p3)), p3), p3))
      rep.fail("PB units are neutral", w);
    if (!pb_equal(pb_product(P, p3, pb_inverse(P, p3)), pb_unit(P, pb_target(P, p3))))
      rep.fail("PB inverse", w);

    // The action map is a groupoid map: (p1 . a1)(p2 . a2) = (p1 p2) . (a1 a2).
    GL2Element a2 = random_gl2(R.cx, p2.frame.x, random_twin(R.cx, p2.frame.x, rng), pb_moment(P, p2), rng);
    GL2Element a1{gl2_vtarget(a2), rng.matrix(a2.h.rows(), a2.h.cols())};
    if (!gl2_valid(a1)) a1.h = Matrix(a2.h.rows(), a2.h.cols());
    PBElement lhs = pb_product(P, pb_act(P, p1, a1), pb_act(P, p2, a2));
    PBElement rhs = pb_act(P, pb_product(P, p1, p2), glG_vertical(a1, a2));
    if (!pb_equal(lhs, rhs)) rep.fail("the 2-action map is a groupoid map", w + " h1=" + to_string(a1.h) + " h2=" + to_string(a2.h));
    // Moment compatibility and the horizontal action law.
    PBElement q = pb_act(P, p2, a2);
    if (!(pb_source(P, q) == glM_product(pb_source(P, p2), gl2_vsource(a2))) ||
        !(pb_target(P, q) == glM_product(pb_target(P, p2), gl2_vtarget(a2))))
      rep.fail("source and target of p . a are s(p) s(a) and t(p) t(a)", w + " " + frame_text(a2.frame));
    GL2Element b = random_gl2(R.cx, a2.frame.x, random_twin(R.cx, a2.frame.x, rng), gl_source_d(a2.frame), rng);
    if (!pb_equal(pb_act(P, q, b), pb_act(P, p2, glG_horizontal(a2, b))))
      rep.fail("(p . a) . b = p . (a b) for the horizontal product", w);
    // Principality: the acting element is recovered uniquely.
    auto sol = pb_solve_action(P, p2, q);
    if (!sol || !sol->unique || !(sol->a == a2)) rep.fail("the 2-action is free and transitive on fibers", w);
  }
  return rep;
}

Report pb_ses_check(const PBGroupoid& P, Rng& rng, int samples) {
  const auto& R = P.R;
  const auto& G = R.G;
  Report rep;
  for (int g = 0; g < G.num_arrows(); ++g) {
    ++rep.checked;
    try {
      certify_fiber(R, g);
    } catch (const Error& e) {
      rep.fail("the projection P -> G is surjective", "arrow " + G.arrows[g].id + ": " + e.what());
    }
  }
  for (int i = 0; i < samples; ++i) {
    const int y = static_cast<int>(rng.below(G.num_objects()));
    const Matrix& d = R.d(y);
    GL2Element a2 = random_gl2(R.cx, y, random_twin(R.cx, y, rng), d, rng);
    a2.frame.d = d;
    if (!gl2_valid(a2)) a2.h = Matrix(d.cols(), d.rows());
    // frames of the embedded H(V,C) x| GL(C,V) carry the differential at y
    GLFrame f2{y, a2.frame.x, d, a2.frame.C, a2.frame.V};
    GL2Element e2{f2, a2.h};
    GL2Element e1{gl2_vtarget(e2), rng.matrix(d.cols(), d.rows())};
    if (!gl2_valid(e1)) e1.h = Matrix(d.cols(), d.rows());
    std::string w = "object " + G.objects[y] + " h1=" + to_string(e1.h) + " h2=" + to_string(e2.h);
    ++rep.checked;
    PBElement p1 = pb_embed(P, e1.h, e1.frame), p2 = pb_embed(P, e2.h, e2.frame);
    PBElement prod;
    try {
      prod = pb_product(P, p1, p2);
    } catch (const Error&) {
      rep.fail("the embedding of H(V,C) x| GL(C,V) preserves composability", w);
      continue;
    }
    if (!pb_equal(prod, pb_embed(P, h_product(d, e1.h, e2.h), e2.frame)))
      rep.fail("the embedding of H(V,C) x| GL(C,V) is a groupoid map", w);
    if (!G.is_unit(p1.H.g)) rep.fail("the embedding lands in the kernel of P -> G", w);
    // Every kernel element is uniquely of the embedded form.
    PBElement q{random_fat(R, G.unit[y], rng), random_frame(R.cx, y, random_twin(R.cx, y, rng), d, rng)};
    auto sol = pb_solve_action(P, pb_unit(P, gl_identity(R.cx, y)), q);
    if (!sol || !sol->unique || !pb_equal(pb_embed(P, sol->a.h, sol->a.frame), q))
      rep.fail("kernel elements are uniquely embedded", "object " + G.objects[y] + " h=" + to_string(q.H.h));
  }
  return rep;
}

std::vector<FatElement> default_lifts(const Ruth& R) {
  std::vector<FatElement> lifts;
  for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(certify_fiber(R, g));
  return lifts;
}

Ruth pb_to_fat(const PBGroupoid& P, const std::vector<FatElement>& lifts) {
  const auto& G = P.R.G;
  Ruth S = empty_ruth(G, P.R.cx);
  S.unital = P.R.unital;
  std::vector<PBElement> reps;
  std::vector<GLFrame> targets;
  for (int g = 0; g < G.num_arrows(); ++g) {
    reps.push_back(pb_normalize(P, {lifts[g], gl_identity(P.R.cx, G.s(g))}));
    targets.push_back(pb_target(P, reps.back()));
    const Matrix& h = reps.back().H.h;
    S.R1C[g] = targets[g].C - h * P.R.d(G.s(g));
    S.R1V[g] = targets[g].V - P.R.d(G.t(g)) * h;
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int k = 0; k < G.num_arrows(); ++k) {
      if (!G.composable(g, k)) continue;
      PBElement q = pb_quotient_product(P, reps[g], reps[k]);
      const Matrix &hg = reps[g].H.h, &hk = reps[k].H.h;
      S.r2(g, k) = q.H.h - hg * targets[k].V - targets[g].C * hk + hg * P.R.d(G.s(g)) * hk;
    }
  return S;
}

namespace {

std::vector<FatElement> fats(const std::vector<PBElement>& ps) {
  std::vector<FatElement> out;
  for (const auto& p : ps) out.push_back(p.H);
  return out;
}

Vector f1_value(const Ruth& R, const RuthCochain& f, const std::vector<PBElement>& tail, int object) {
  if (tail.empty()) return f.f1[NerveIndex(R.G, 0).index(NerveTuple{{}, object})];
  return invariant_f1(R, f, fats(tail));
}

}  // namespace

PBCochain pb_pullback(const PBGroupoid& P, const RuthCochain& f) {
  const Ruth* R = &P.R;
  return {f.degree, [R, f](const std::vector<PBElement>& ps) { return invariant_eval(*R, f, fats(ps)); },
          [R, f](const std::vector<PBElement>& tail, int object) { return f1_value(*R, f, tail, object); }};
}

PBCochain pb_naive_pullback(const PBGroupoid& P, const RuthCochain& f) {
  const Ruth* R = &P.R;
  return {f.degree,
          [R, f](const std::vector<PBElement>& ps) {
            NerveTuple t;
            for (const auto& p : ps) t.arrows.push_back(p.H.g);
            return f.f0[NerveIndex(R->G, f.degree).index(t)];
          },
          [R, f](const std::vector<PBElement>& tail, int object) { return f1_value(*R, f, tail, object); }};
}

Report gl_equiv_check(const PBGroupoid& P, const PBCochain& f, const RuthCochain& original, Rng& rng, int samples) {
  const auto& R = P.R;
  const auto& G = R.G;
  const int n = f.degree;
  if (n < 1) throw Error(ErrorKind::DegreeTooLow, "equivariant cochains need degree >= 1");
  Report rep;
  for (int i = 0; i < samples; ++i) {
    NerveTuple t = random_tuple(G, n, rng);
    std::vector<PBElement> ps;
    for (int g : t.arrows) ps.push_back(pb_random(P, g, rng));
    std::vector<PBElement> tail(ps.begin() + 1, ps.end());
    const int s1 = G.s(t.arrows[0]);
    const PBElement& p1 = ps[0];
    GL2Element a = random_gl2(R.cx, p1.frame.x, random_twin(R.cx, p1.frame.x, rng), pb_moment(P, p1), rng);
    std::vector<PBElement> moved = ps;
    moved[0] = pb_act(P, p1, a);
    Vector lhs = f.f0(moved);
    Matrix k = p1.frame.C * a.h * inverse(p1.frame.V);
    Vector rhs = f.f0(ps) - fat_rep(R, p1.H).C * (k * f.f1(tail, s1));
    ++rep.checked;
    if (lhs != rhs) rep.fail("GL-equivariance: f0(p . (h, Psi), ...) = f0(p, ...) - p . (Psi h Psi^-1 f1(...))", describe(G, t) + " h=" + to_string(a.h));
    if (n >= 2) {
      std::vector<PBElement> other;
      for (std::size_t j = 1; j < t.arrows.size(); ++j) other.push_back(pb_random(P, t.arrows[j], rng));
      if (f.f1(tail, s1) != f.f1(other, s1)) rep.fail("f1 does not depend on the chosen lifts", describe(G, t));
    }
  }
  // The pullback is a bijection: f is recovered from values at unit frames.
  NerveIndex i0(G, n), i1(G, n - 1);
  for (std::size_t j = 0; j < i0.size(); ++j) {
    const auto& t = i0[j];
    std::vector<PBElement> ps;
    for (int g : t.arrows) ps.push_back({certify_fiber(R, g), gl_identity(R.cx, G.s(g))});
    std::vector<PBElement> tail(ps.begin() + 1, ps.end());
    const int s1 = G.s(t.arrows[0]);
    Vector f1v = f.f1(tail, s1);
    Vector f0v = f.f0(ps) + ps[0].H.h * f1v;
    ++rep.checked;
    NerveTuple tt{std::vector<int>(t.arrows.begin() + 1, t.arrows.end()), n == 1 ? s1 : -1};
    if (f0v != original.f0[j] || f1v != original.f1[i1.index(tt)])
      rep.fail("the pullback is recovered from its values at unit frames", describe(G, t));
  }
  return rep;
}

}  // namespace fatlab
