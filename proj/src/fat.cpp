#include "fatlab/fat.hpp"

namespace fatlab {

namespace {

std::string aname(const Ruth& R, int g) { return R.G.arrows[g].id; }

void require_composable(const Ruth& R, int g, int h) {
  if (!R.G.composable(g, h)) throw Error(ErrorKind::NotComposable, aname(R, g) + " * " + aname(R, h));
}

Matrix phiV(const Ruth& R, int g, const Matrix& h) { return R.R1V[g] + R.d(R.G.t(g)) * h; }
Matrix phiC(const Ruth& R, int g, const Matrix& h) { return R.R1C[g] + h * R.d(R.G.s(g)); }

}  // namespace

std::optional<FatElement> try_fat(const Ruth& R, int g, const Matrix& h) {
  const auto& G = R.G;
  if (h.rows() != R.c(G.t(g)) || h.cols() != R.v(G.s(g)))
    throw Error(ErrorKind::ShapeMismatch, "homotopy over " + aname(R, g));
  Matrix p = phiV(R, g, h);
  if (!invertible(p)) return std::nullopt;
  return FatElement{g, h, inverse(p)};
}

FatElement make_fat(const Ruth& R, int g, const Matrix& h) {
  auto H = try_fat(R, g, h);
  if (!H) throw Error(ErrorKind::NotInvertibleInput, "R1V(g) + d h is singular over " + aname(R, g));
  return *H;
}

FatElement fat_unit(const Ruth& R, int x) {
  if (!R.unital) throw Error(ErrorKind::NotUnital, "fat units need a unital ruth");
  const int u = R.G.unit[x];
  return make_fat(R, u, Matrix(R.c(x), R.v(x)));
}

FatElement certify_fiber(const Ruth& R, int g) {
  const auto& G = R.G;
  const int s = G.s(g), t = G.t(g);
  if (auto H = try_fat(R, g, Matrix(R.c(t), R.v(s)))) return *H;
  if (R.v(s) != R.v(t)) throw Error(ErrorKind::FiberNotCertified, "V fibers differ in dimension over " + aname(R, g));
  const Matrix& d = R.d(t);
  const Matrix& Rv = R.R1V[g];
  const std::size_t n = R.v(s);
  // K = {v : Rv v in im d}, the kernel of Rv followed by the projection to coker d.
  auto pairs = kernel_basis(hstack(Rv, -d));
  std::vector<Vector> K;
  for (const auto& p : pairs) {
    Vector v(p.begin(), p.begin() + n);
    Matrix cand = Matrix::from_columns(n, K);
    if (rank(hstack(cand, Matrix::column(v))) > K.size()) K.push_back(v);
  }
  // Basis of im d from pivot columns.
  std::vector<Vector> W;
  for (std::size_t j = 0; j < d.cols(); ++j) {
    Vector w = d.col(j);
    if (rank(hstack(Matrix::from_columns(n, W), Matrix::column(w))) > W.size()) W.push_back(w);
  }
  if (K.size() != W.size()) throw Error(ErrorKind::FiberNotCertified, "Rv does not surject onto coker d over " + aname(R, g));
  // Extend K to a basis of V_s by standard vectors.
  std::vector<Vector> S;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n);
    e[i] = 1;
    std::vector<Vector> all = K;
    all.insert(all.end(), S.begin(), S.end());
    if (rank(hstack(Matrix::from_columns(n, all), Matrix::column(e))) > all.size()) S.push_back(e);
  }
  std::vector<Vector> basis = K, images = W;
  for (const auto& e : S) {
    basis.push_back(e);
    images.push_back(Rv * e);
  }
  Matrix T = Matrix::from_columns(n, images) * inverse(Matrix::from_columns(n, basis));
  if (!invertible(T)) throw Error(ErrorKind::FiberNotCertified, "no invertible completion over " + aname(R, g));
  Matrix h = solve_matrix(d, T - Rv);
  return make_fat(R, g, h);
}

FatElement random_fat(const Ruth& R, int g, Rng& rng) {
  const std::size_t rows = R.c(R.G.t(g)), cols = R.v(R.G.s(g));
  for (int attempt = 0; attempt < 32; ++attempt)
    if (auto H = try_fat(R, g, rng.matrix(rows, cols))) return *H;
  return certify_fiber(R, g);
}

ChainPair fat_rep(const Ruth& R, const FatElement& H) { return {phiC(R, H.g, H.h), phiV(R, H.g, H.h)}; }

FatElement fat_product(const Ruth& R, const FatElement& a, const FatElement& b) {
  require_composable(R, a.g, b.g);
  const int gh = R.G.mul(a.g, b.g);
  Matrix h = R.r2(a.g, b.g) + a.h * R.R1V[b.g] + R.R1C[a.g] * b.h + a.h * R.d(R.G.s(a.g)) * b.h;
  return make_fat(R, gh, h);
}

FatElement fat_inverse(const Ruth& R, const FatElement& H) {
  if (!R.unital) throw Error(ErrorKind::NotUnital, "fat inverses need a unital ruth");
  const int gi = R.G.inv[H.g];
  Matrix h = -((R.r2(gi, H.g) + R.R1C[gi] * H.h) * H.phiV_inv);
  return make_fat(R, gi, h);
}

Matrix fat_inverse_alt(const Ruth& R, const FatElement& H) {
  const int gi = R.G.inv[H.g];
  return -(inverse(phiC(R, H.g, H.h)) * (R.r2(H.g, gi) + H.h * R.R1V[gi]));
}

bool fat_equal(const FatElement& a, const FatElement& b) { return a.g == b.g && a.h == b.h; }

FatElement fat_act_left(const Ruth& R, const Matrix& k, const FatElement& H) {
  return make_fat(R, H.g, H.h + k * phiV(R, H.g, H.h));
}

FatElement fat_act_right(const Ruth& R, const FatElement& H, const Matrix& k) {
  return make_fat(R, H.g, H.h + phiC(R, H.g, H.h) * k);
}

bool conjugation_check(const Ruth& R, const FatElement& H, const Matrix& k) {
  const int s = R.G.s(H.g), t = R.G.t(H.g);
  FatElement K = make_fat(R, R.G.unit[s], k);
  FatElement lhs = fat_product(R, fat_product(R, H, K), fat_inverse(R, H));
  auto phi = fat_rep(R, H);
  FatElement rhs = make_fat(R, R.G.unit[t], phi.C * k * H.phiV_inv);
  return fat_equal(lhs, rhs);
}

Matrix comparison(const FatElement& a, const FatElement& b) {
  if (a.g != b.g) throw Error(ErrorKind::BaseMismatch, "comparison over different arrows");
  return b.h - a.h;
}

std::vector<FatElement> zero_splitting(const Ruth& R) {
  std::vector<FatElement> lifts;
  for (int g = 0; g < R.G.num_arrows(); ++g) lifts.push_back(make_fat(R, g, Matrix(R.c(R.G.t(g)), R.v(R.G.s(g)))));
  return lifts;
}

std::vector<Matrix> splitting_R2(const Ruth& R, const std::vector<FatElement>& lifts) {
  const auto& G = R.G;
  if (static_cast<int>(lifts.size()) != G.num_arrows()) throw Error(ErrorKind::ShapeMismatch, "one lift per arrow");
  std::vector<Matrix> out(R.R2.size());
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h) {
      if (!G.composable(g, h)) continue;
      const FatElement &a = lifts[g], &b = lifts[h];
      FatElement ab = fat_product(R, a, b);
      auto pa = fat_rep(R, a), pb = fat_rep(R, b);
      out[static_cast<std::size_t>(g) * G.arrows.size() + h] =
          ab.h - a.h * pb.V - pa.C * b.h + a.h * R.d(G.s(g)) * b.h;
    }
  return out;
}

Ruth ruth_from_splitting(const Ruth& R, const std::vector<FatElement>& lifts) {
  Ruth S = empty_ruth(R.G, R.cx);
  S.unital = R.unital;
  for (int g = 0; g < R.G.num_arrows(); ++g) {
    const auto& H = lifts[g];
    if (H.g != g) throw Error(ErrorKind::BaseMismatch, "lift listed under the wrong arrow");
    auto p = fat_rep(R, H);
    S.R1C[g] = p.C - H.h * R.d(R.G.s(g));
    S.R1V[g] = p.V - R.d(R.G.t(g)) * H.h;
  }
  S.R2 = splitting_R2(R, lifts);
  return S;
}

TrivialElement trivialize(const Ruth& R, const FatElement& H) {
  if (!is_flat(R)) throw Error(ErrorKind::NotMultiplicative, "R2 != 0: the zero splitting is not multiplicative");
  return {H.g, H.h * inverse(R.R1V[H.g])};
}

FatElement untrivialize(const Ruth& R, const TrivialElement& e) {
  if (!is_flat(R)) throw Error(ErrorKind::NotMultiplicative, "R2 != 0");
  return make_fat(R, e.g, e.k * R.R1V[e.g]);
}

TrivialElement trivial_product(const Ruth& R, const TrivialElement& a, const TrivialElement& b) {
  require_composable(R, a.g, b.g);
  const Matrix& d = R.d(R.G.t(a.g));
  Matrix moved = R.R1C[a.g] * b.k * inverse(R.R1V[a.g]);
  return {R.G.mul(a.g, b.g), h_product(d, a.k, moved)};
}

DualFatElement pairing_closed_form(const Ruth& R, const FatElement& H, const Matrix& T) {
  const int s = R.G.s(H.g);
  DualFatElement w;
  w.g = H.g;
  w.A = (Matrix::identity(R.c(s)) + T * R.d(s)) * inverse(phiC(R, H.g, H.h));
  w.B = T - w.A * H.h;
  return w;
}

PairingSolution pairing_solve(const Ruth& R, const FatElement& H, const Matrix& T) {
  const int s = R.G.s(H.g), t = R.G.t(H.g);
  const std::size_t cs = R.c(s), ct = R.c(t), vs = R.v(s);
  if (T.rows() != cs || T.cols() != vs) throw Error(ErrorKind::ShapeMismatch, "pairing target shape");
  const std::size_t nA = cs * ct, nB = cs * vs, nEq1 = cs * cs, nEq2 = cs * vs;
  // Unknowns vec(A), vec(B); equations A R1C - B d = 1 and A h + B = T.
  Matrix L(nEq1 + nEq2, nA + nB);
  for (std::size_t j = 0; j < nA + nB; ++j) {
    Matrix A(cs, ct), B(cs, vs);
    if (j < nA) A(j / ct, j % ct) = 1;
    else B((j - nA) / vs, (j - nA) % vs) = 1;
    Matrix e1 = A * R.R1C[H.g] - B * R.d(s), e2 = A * H.h + B;
    for (std::size_t i = 0; i < nEq1; ++i) L(i, j) = e1(i / cs, i % cs);
    for (std::size_t i = 0; i < nEq2; ++i) L(nEq1 + i, j) = e2(i / vs, i % vs);
  }
  Vector rhs(nEq1 + nEq2);
  for (std::size_t i = 0; i < cs; ++i) rhs[i * cs + i] = 1;
  for (std::size_t i = 0; i < nEq2; ++i) rhs[nEq1 + i] = T(i / vs, i % vs);
  auto sol = solve(L, rhs);
  PairingSolution out;
  out.unique = sol.unique;
  out.omega.g = H.g;
  out.omega.A = Matrix(cs, ct);
  out.omega.B = Matrix(cs, vs);
  for (std::size_t j = 0; j < nA; ++j) out.omega.A(j / ct, j % ct) = sol.x[j];
  for (std::size_t j = 0; j < nB; ++j) out.omega.B(j / vs, j % vs) = sol.x[nA + j];
  return out;
}

DualFatElement dual_product(const Ruth& R, const DualFatElement& a, const DualFatElement& b) {
  require_composable(R, a.g, b.g);
  DualFatElement w;
  w.g = R.G.mul(a.g, b.g);
  Matrix AbAa = b.A * a.A;
  w.A = AbAa;
  w.B = -(AbAa * R.r2(a.g, b.g)) + b.A * a.B * R.R1V[b.g] + b.B;
  return w;
}

FatElement fat_from_dual(const Ruth& R, const DualFatElement& w) {
  return make_fat(R, w.g, -(inverse(w.A) * w.B));
}

Matrix block_phiV(const Ruth& R1, const Ruth& R2, const BlockFat& a) {
  const int t = R1.G.t(a.g);
  Matrix top = hstack(phiV(R1, a.g, a.h11), R1.d(t) * a.h12);
  Matrix bot = hstack(R2.d(t) * a.h21, phiV(R2, a.g, a.h22));
  return vstack(top, bot);
}

bool block_member(const Ruth& R1, const Ruth& R2, const BlockFat& a) { return invertible(block_phiV(R1, R2, a)); }

BlockFat block_product(const Ruth& R1, const Ruth& R2, const BlockFat& a, const BlockFat& b) {
  require_composable(R1, a.g, b.g);
  if (!block_member(R1, R2, a) || !block_member(R1, R2, b))
    throw Error(ErrorKind::NotInvertibleInput, "block factor is not invertible");
  const int s = R1.G.s(a.g);
  const Matrix &d1 = R1.d(s), &d2 = R2.d(s);
  BlockFat r;
  r.g = R1.G.mul(a.g, b.g);
  r.h11 = R1.r2(a.g, b.g) + a.h11 * R1.R1V[b.g] + R1.R1C[a.g] * b.h11 + a.h11 * d1 * b.h11 + a.h12 * d2 * b.h21;
  r.h22 = R2.r2(a.g, b.g) + a.h22 * R2.R1V[b.g] + R2.R1C[a.g] * b.h22 + a.h22 * d2 * b.h22 + a.h21 * d1 * b.h12;
  r.h12 = phiC(R1, a.g, a.h11) * b.h12 + a.h12 * phiV(R2, b.g, b.h22);
  r.h21 = a.h21 * phiV(R1, b.g, b.h11) + phiC(R2, a.g, a.h22) * b.h21;
  return r;
}

BlockFat block_unit(const Ruth& R1, const Ruth& R2, int x) {
  if (!R1.unital || !R2.unital) throw Error(ErrorKind::NotUnital, "block units need unital ruths");
  return {R1.G.unit[x], Matrix(R1.c(x), R1.v(x)), Matrix(R1.c(x), R2.v(x)), Matrix(R2.c(x), R1.v(x)),
          Matrix(R2.c(x), R2.v(x))};
}

Ruth direct_sum(const Ruth& R1, const Ruth& R2) {
  const auto& G = R1.G;
  TwoTermComplex cx;
  for (int x = 0; x < G.num_objects(); ++x) cx.d.push_back(fatlab::direct_sum(R1.d(x), R2.d(x)));
  Ruth S = empty_ruth(G, cx);
  S.unital = R1.unital && R2.unital;
  for (int g = 0; g < G.num_arrows(); ++g) {
    S.R1C[g] = fatlab::direct_sum(R1.R1C[g], R2.R1C[g]);
    S.R1V[g] = fatlab::direct_sum(R1.R1V[g], R2.R1V[g]);
    for (int h = 0; h < G.num_arrows(); ++h)
      if (G.composable(g, h)) S.r2(g, h) = fatlab::direct_sum(R1.r2(g, h), R2.r2(g, h));
  }
  return S;
}

namespace {

NerveTuple tuple_of(const std::vector<FatElement>& lifts, std::size_t from, std::size_t to, int object) {
  NerveTuple t;
  for (std::size_t i = from; i < to; ++i) t.arrows.push_back(lifts[i].g);
  if (t.arrows.empty()) t.object = object;
  return t;
}

void require_chain(const Ruth& R, const std::vector<FatElement>& lifts) {
  for (std::size_t i = 0; i + 1 < lifts.size(); ++i) require_composable(R, lifts[i].g, lifts[i + 1].g);
}

// F0 at lifts of length n >= 1, or f0 at an object when n = 0.
Vector F0(const Ruth& R, const RuthCochain& f, const NerveIndex& i0, const NerveIndex& i1,
          const std::vector<FatElement>& lifts, int object) {
  if (lifts.empty()) return f.f0[i0.index(NerveTuple{{}, object})];
  Vector val = f.f0[i0.index(tuple_of(lifts, 0, lifts.size(), -1))];
  Vector tail = f.f1[i1.index(tuple_of(lifts, 1, lifts.size(), R.G.s(lifts[0].g)))];
  return val - lifts[0].h * tail;
}

Vector F1(const RuthCochain& f, const NerveIndex& i1, const std::vector<FatElement>& lifts, int object) {
  return f.f1[i1.index(tuple_of(lifts, 0, lifts.size(), object))];
}

}  // namespace

Vector invariant_eval(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts) {
  if (f.degree < 1) throw Error(ErrorKind::DegreeTooLow, "invariant_eval needs degree >= 1");
  if (static_cast<int>(lifts.size()) != f.degree) throw Error(ErrorKind::DegreeMismatch, "one lift per arrow");
  require_chain(R, lifts);
  NerveIndex i0(R.G, f.degree), i1(R.G, f.degree - 1);
  return F0(R, f, i0, i1, lifts, -1);
}

Vector invariant_f1(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts) {
  if (f.degree < 2) throw Error(ErrorKind::DegreeTooLow, "invariant_f1 with lifts needs degree >= 2");
  if (static_cast<int>(lifts.size()) != f.degree - 1) throw Error(ErrorKind::DegreeMismatch, "one lift per arrow");
  require_chain(R, lifts);
  NerveIndex i1(R.G, f.degree - 1);
  return F1(f, i1, lifts, -1);
}

FatCochainValue fat_delta_eval(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts) {
  const int n = f.degree;
  if (static_cast<int>(lifts.size()) != n + 1) throw Error(ErrorKind::DegreeMismatch, "need degree + 1 lifts");
  require_chain(R, lifts);
  const auto& G = R.G;
  NerveIndex i0(G, n), i1(G, n - 1);
  auto face_lifts = [&](const std::vector<FatElement>& L, int k) {
    std::vector<FatElement> out;
    const int m = static_cast<int>(L.size());
    for (int i = 0; i < m; ++i) {
      if (k == 0 && i == 0) continue;
      if (k == m && i == m - 1) continue;
      if (k >= 1 && k < m && i == k - 1) {
        out.push_back(fat_product(R, L[i], L[i + 1]));
        ++i;
        continue;
      }
      out.push_back(L[i]);
    }
    return out;
  };
  // Object of a face of a single lift: d0 -> s g, d1 -> t g.
  auto face_object = [&](const std::vector<FatElement>& L, int k) {
    return k == 0 ? G.s(L.back().g) : G.t(L.front().g);
  };
  FatCochainValue out;
  {
    auto phi = fat_rep(R, lifts[0]);
    auto tail = face_lifts(lifts, 0);
    Vector val = phi.C * F0(R, f, i0, i1, tail, G.s(lifts[0].g));
    for (int k = 1; k <= n + 1; ++k) {
      auto L = face_lifts(lifts, k);
      Vector x = F0(R, f, i0, i1, L, n == 0 ? face_object(lifts, k) : -1);
      val = (k % 2) ? val - x : val + x;
    }
    out.c = ((n % 2) ? Rational(-1) : Rational(1)) * val;
  }
  {
    std::vector<FatElement> first(lifts.begin(), lifts.begin() + n);
    const int x0 = G.t(lifts[0].g);
    Vector val = R.d(x0) * F0(R, f, i0, i1, first, x0);
    if (n >= 1) {
      auto phi = fat_rep(R, first[0]);
      val = val + phi.V * F1(f, i1, face_lifts(first, 0), G.s(first[0].g));
      for (int k = 1; k <= n; ++k) {
        auto L = face_lifts(first, k);
        Vector x = F1(f, i1, L, n == 1 ? face_object(first, k) : -1);
        val = (k % 2) ? val - x : val + x;
      }
    }
    out.v = ((n % 2) ? Rational(1) : Rational(-1)) * val;
  }
  return out;
}

FatMorphism identity_morphism(const Ruth& R) {
  FatMorphism m;
  for (int x = 0; x < R.G.num_objects(); ++x) {
    m.PhiC.push_back(Matrix::identity(R.c(x)));
    m.PhiV.push_back(Matrix::identity(R.v(x)));
  }
  for (int g = 0; g < R.G.num_arrows(); ++g) m.mu.emplace_back(R.c(R.G.t(g)), R.v(R.G.s(g)));
  return m;
}

Matrix morphism_eval(const Ruth& R1, const FatMorphism& m, const FatElement& H1, const FatElement& H2) {
  if (H1.g != H2.g) throw Error(ErrorKind::BaseMismatch, "morphism_eval over different arrows");
  const int g = H1.g;
  return m.mu[g] + H2.h * m.PhiV[R1.G.s(g)] - m.PhiC[R1.G.t(g)] * H1.h;
}

Report morphism_check(const Ruth& R1, const Ruth& R2, const FatMorphism& m, Rng& rng, int samples) {
  const auto& G = R1.G;
  Report rep;
  if (static_cast<int>(m.PhiC.size()) != G.num_objects() || static_cast<int>(m.PhiV.size()) != G.num_objects() ||
      static_cast<int>(m.mu.size()) != G.num_arrows())
    throw Error(ErrorKind::ShapeMismatch, "morphism table sizes");
  for (int x = 0; x < G.num_objects(); ++x) {
    ++rep.checked;
    if (R2.d(x) * m.PhiC[x] != m.PhiV[x] * R1.d(x))
      rep.fail("Phi is a chain map: d2 PhiC = PhiV d1", "x=" + G.objects[x]);
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    ++rep.checked;
    Matrix a = m.mu[g] * R1.d(s) - (R2.R1C[g] * m.PhiC[s] - m.PhiC[t] * R1.R1C[g]);
    if (!a.is_zero())
      rep.fail("mu is a homotopy on C: mu d1 = R1C2 PhiC - PhiC R1C1", "g=" + aname(R1, g) + " residual=" + to_string(a));
    Matrix b = R2.d(t) * m.mu[g] - (R2.R1V[g] * m.PhiV[s] - m.PhiV[t] * R1.R1V[g]);
    if (!b.is_zero())
      rep.fail("mu is a homotopy on V: d2 mu = R1V2 PhiV - PhiV R1V1", "g=" + aname(R1, g) + " residual=" + to_string(b));
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h) {
      if (!G.composable(g, h)) continue;
      ++rep.checked;
      const int gh = G.mul(g, h);
      Matrix r = m.mu[gh] + R2.r2(g, h) * m.PhiV[G.s(h)] - m.PhiC[G.t(g)] * R1.r2(g, h) -
                 (m.mu[g] * R1.R1V[h] + R2.R1C[g] * m.mu[h]);
      if (!r.is_zero())
        rep.fail("mu is multiplicative up to R2: mu(gh) + R2' PhiV - PhiC R2 = mu(g) R1V(h) + R1C'(g) mu(h)",
                 "(g,h)=(" + aname(R1, g) + "," + aname(R1, h) + ") residual=" + to_string(r));
    }
  if (!rep.ok()) return rep;
  for (int i = 0; i < samples; ++i) {
    const int g = static_cast<int>(rng.below(G.num_arrows()));
    const int s = G.s(g), t = G.t(g);
    FatElement H1 = random_fat(R1, g, rng), H2 = random_fat(R2, g, rng);
    Matrix f = morphism_eval(R1, m, H1, H2);
    auto p1 = fat_rep(R1, H1), p2 = fat_rep(R2, H2);
    ++rep.checked;
    if (f * R1.d(s) != p2.C * m.PhiC[s] - m.PhiC[t] * p1.C)
      rep.fail("f(H1,H2) d1 = phiC(H2) PhiC - PhiC phiC(H1)", "g=" + aname(R1, g) + " h1=" + to_string(H1.h) + " h2=" + to_string(H2.h));
    if (R2.d(t) * f != p2.V * m.PhiV[s] - m.PhiV[t] * p1.V)
      rep.fail("d2 f(H1,H2) = phiV(H2) PhiV - PhiV phiV(H1)", "g=" + aname(R1, g) + " h1=" + to_string(H1.h) + " h2=" + to_string(H2.h));
  }
  return rep;
}

FatMorphism morphism_compose(const Ruth& R1, const FatMorphism& m21, const FatMorphism& m32) {
  const auto& G = R1.G;
  FatMorphism m;
  for (int x = 0; x < G.num_objects(); ++x) {
    m.PhiC.push_back(m32.PhiC[x] * m21.PhiC[x]);
    m.PhiV.push_back(m32.PhiV[x] * m21.PhiV[x]);
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    m.mu.push_back(m32.mu[g] * m21.PhiV[G.s(g)] + m32.PhiC[G.t(g)] * m21.mu[g]);
  return m;
}

VBGroupoid vb_structure(const Ruth& R) {
  VBGroupoid vb;
  vb.G = &R.G;
  for (int x = 0; x < R.G.num_objects(); ++x) {
    vb.c.push_back(R.c(x));
    vb.v.push_back(R.v(x));
  }
  const Ruth* r = &R;
  vb.source = [](const VBElement& e) { return e.v; };
  vb.target = [r](const VBElement& e) { return r->d(r->G.t(e.g)) * e.c + r->R1V[e.g] * e.v; };
  vb.product = [r](const VBElement& a, const VBElement& b) {
    require_composable(*r, a.g, b.g);
    Vector tb = r->d(r->G.t(b.g)) * b.c + r->R1V[b.g] * b.v;
    if (tb != a.v) throw Error(ErrorKind::NotComposable, "VB source/target mismatch");
    return VBElement{r->G.mul(a.g, b.g), a.c + r->R1C[a.g] * b.c + r->r2(a.g, b.g) * b.v, b.v};
  };
  vb.inverse = [r](const VBElement& e) {
    const int gi = r->G.inv[e.g];
    Vector te = r->d(r->G.t(e.g)) * e.c + r->R1V[e.g] * e.v;
    return VBElement{gi, Rational(-1) * (r->R1C[gi] * e.c) - r->r2(gi, e.g) * e.v, te};
  };
  vb.unit = [r](int x, const Vector& v) { return VBElement{r->G.unit[x], Vector(r->c(x)), v}; };
  return vb;
}

VBSection vb_section(const VBGroupoid& vb, const FatElement& H) {
  const int s = vb.G->s(H.g);
  return {H.g, vstack(H.h, Matrix::identity(vb.v[s]))};
}

namespace {

VBElement apply_section(const VBGroupoid& vb, const VBSection& S, const Vector& v) {
  const std::size_t ct = vb.c[vb.G->t(S.g)];
  Vector w = S.H * v;
  return {S.g, Vector(w.begin(), w.begin() + ct), Vector(w.begin() + ct, w.end())};
}

}  // namespace

VBSection vb_section_product(const VBGroupoid& vb, const VBSection& a, const VBSection& b) {
  const auto& G = *vb.G;
  if (!G.composable(a.g, b.g)) throw Error(ErrorKind::NotComposable, "section product");
  const int gh = G.mul(a.g, b.g);
  const std::size_t vs = vb.v[G.s(b.g)], ct = vb.c[G.t(gh)];
  VBSection out{gh, Matrix(ct + vs, vs)};
  for (std::size_t j = 0; j < vs; ++j) {
    Vector e(vs);
    e[j] = 1;
    VBElement be = apply_section(vb, b, e);
    VBElement ae = apply_section(vb, a, vb.target(be));
    VBElement p = vb.product(ae, be);
    for (std::size_t i = 0; i < ct; ++i) out.H(i, j) = p.c[i];
    for (std::size_t i = 0; i < vs; ++i) out.H(ct + i, j) = p.v[i];
  }
  return out;
}

Ruth ruth_from_vb(const VBGroupoid& vb) {
  const auto& G = *vb.G;
  TwoTermComplex cx;
  for (int x = 0; x < G.num_objects(); ++x) {
    Matrix d(vb.v[x], vb.c[x]);
    for (std::size_t j = 0; j < vb.c[x]; ++j) {
      Vector c(vb.c[x]);
      c[j] = 1;
      Vector tc = vb.target(VBElement{G.unit[x], c, Vector(vb.v[x])});
      for (std::size_t i = 0; i < vb.v[x]; ++i) d(i, j) = tc[i];
    }
    cx.d.push_back(d);
  }
  Ruth R = empty_ruth(G, cx);
  std::vector<VBSection> zero;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    zero.push_back({g, vstack(Matrix(vb.c[t], vb.v[s]), Matrix::identity(vb.v[s]))});
    // R1V is the target of the zero section; R1C is right multiplication by the core.
    for (std::size_t j = 0; j < vb.v[s]; ++j) {
      Vector v(vb.v[s]);
      v[j] = 1;
      Vector tv = vb.target(apply_section(vb, zero.back(), v));
      for (std::size_t i = 0; i < vb.v[t]; ++i) R.R1V[g](i, j) = tv[i];
    }
    for (std::size_t j = 0; j < vb.c[s]; ++j) {
      Vector c(vb.c[s]);
      c[j] = 1;
      VBElement core{G.unit[s], c, Vector(vb.v[s])};
      VBElement p = vb.product(apply_section(vb, zero.back(), vb.target(core)), core);
      for (std::size_t i = 0; i < vb.c[t]; ++i) R.R1C[g](i, j) = p.c[i];
    }
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h) {
      if (!G.composable(g, h)) continue;
      VBSection p = vb_section_product(vb, zero[g], zero[h]);
      R.r2(g, h) = p.H.block(0, 0, vb.c[G.t(g)], vb.v[G.s(h)]);
    }
  R.unital = check_unital(R).ok();
  return R;
}

std::vector<Matrix> vb_map(const Ruth& R1, const Ruth& R2, const FatMorphism& m) {
  const auto& G = R1.G;
  std::vector<Matrix> F;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    Matrix f(R2.c(t) + R2.v(s), R1.c(t) + R1.v(s));
    f.set_block(0, 0, m.PhiC[t]);
    f.set_block(0, R1.c(t), -m.mu[g]);
    f.set_block(R2.c(t), R1.c(t), m.PhiV[s]);
    F.push_back(f);
  }
  return F;
}

FatMorphism morphism_from_vb_map(const Ruth& R1, const Ruth& R2, const std::vector<Matrix>& F) {
  const auto& G = R1.G;
  FatMorphism m;
  for (int x = 0; x < G.num_objects(); ++x) {
    const Matrix& f = F[G.unit[x]];
    m.PhiC.push_back(f.block(0, 0, R2.c(x), R1.c(x)));
    m.PhiV.push_back(f.block(R2.c(x), R1.c(x), R2.v(x), R1.v(x)));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    m.mu.push_back(-F[g].block(0, R1.c(t), R2.c(t), R1.v(s)));
  }
  return m;
}

Report vb_map_check(const Ruth& R1, const Ruth& R2, const std::vector<Matrix>& F) {
  const auto& G = R1.G;
  auto vb1 = vb_structure(R1), vb2 = vb_structure(R2);
  auto apply = [&](const VBElement& e) {
    const std::size_t ct = R2.c(G.t(e.g));
    Vector x = e.c;
    x.insert(x.end(), e.v.begin(), e.v.end());
    Vector y = F[e.g] * x;
    return VBElement{e.g, Vector(y.begin(), y.begin() + ct), Vector(y.begin() + ct, y.end())};
  };
  Report rep;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    // Source and target on a basis of the fiber over g.
    for (std::size_t j = 0; j < R1.c(t) + R1.v(s); ++j) {
      VBElement e{g, Vector(R1.c(t)), Vector(R1.v(s))};
      if (j < R1.c(t)) e.c[j] = 1;
      else e.v[j - R1.c(t)] = 1;
      VBElement fe = apply(e);
      ++rep.checked;
      // PhiV at the endpoints is read from the unit blocks of F.
      Matrix PhiVs = F[G.unit[s]].block(R2.c(s), R1.c(s), R2.v(s), R1.v(s));
      Matrix PhiVt = F[G.unit[t]].block(R2.c(t), R1.c(t), R2.v(t), R1.v(t));
      if (vb2.source(fe) != PhiVs * vb1.source(e)) rep.fail("VB map commutes with source", "g=" + aname(R1, g));
      if (vb2.target(fe) != PhiVt * vb1.target(e)) rep.fail("VB map commutes with target", "g=" + aname(R1, g));
    }
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h) {
      if (!G.composable(g, h)) continue;
      // Composable pairs are parametrized linearly by (c_a, c_b, v_b).
      const std::size_t ca = R1.c(G.t(g)), cb = R1.c(G.t(h)), vbd = R1.v(G.s(h));
      for (std::size_t j = 0; j < ca + cb + vbd; ++j) {
        VBElement b{h, Vector(cb), Vector(vbd)};
        VBElement a{g, Vector(ca), Vector()};
        if (j < ca) a.c[j] = 1;
        else if (j < ca + cb) b.c[j - ca] = 1;
        else b.v[j - ca - cb] = 1;
        a.v = vb1.target(b);
        ++rep.checked;
        VBElement lhs = apply(vb1.product(a, b));
        VBElement fa = apply(a), fb = apply(b);
        VBElement rhs;
        try {
          rhs = vb2.product(fa, fb);
        } catch (const Error&) {
          rep.fail("VB map preserves composability", "(g,h)=(" + aname(R1, g) + "," + aname(R1, h) + ")");
          continue;
        }
        if (lhs.c != rhs.c || lhs.v != rhs.v)
          rep.fail("VB map is multiplicative: F(a b) = F(a) F(b)", "(g,h)=(" + aname(R1, g) + "," + aname(R1, h) + ") basis " + std::to_string(j));
      }
    }
  return rep;
}

bool ruth_equal(const Ruth& a, const Ruth& b) {
  if (a.G.num_arrows() != b.G.num_arrows() || a.cx.d != b.cx.d || a.R1C != b.R1C || a.R1V != b.R1V) return false;
  for (int g = 0; g < a.G.num_arrows(); ++g)
    for (int h = 0; h < a.G.num_arrows(); ++h)
      if (a.G.composable(g, h) && a.r2(g, h) != b.r2(g, h)) return false;
  return true;
}

}  // namespace fatlab
