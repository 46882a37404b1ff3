#include "fatlab/ruth.hpp"

#include <memory>
#include <sstream>

namespace fatlab {

Ruth empty_ruth(const FiniteGroupoid& G, const TwoTermComplex& cx) {
  if (cx.objects() != G.num_objects()) throw Error(ErrorKind::ShapeMismatch, "complex and groupoid object counts");
  Ruth R;
  R.G = G;
  R.cx = cx;
  const int n = G.num_arrows();
  for (int g = 0; g < n; ++g) {
    R.R1C.emplace_back(cx.c(G.t(g)), cx.c(G.s(g)));
    R.R1V.emplace_back(cx.v(G.t(g)), cx.v(G.s(g)));
  }
  R.R2.assign(static_cast<std::size_t>(n) * n, Matrix());
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (G.composable(g, h)) R.r2(g, h) = Matrix(cx.c(G.t(g)), cx.v(G.s(h)));
  return R;
}

namespace {

std::string aname(const Ruth& R, int g) { return R.G.arrows[g].id; }

void expect(const Matrix& m, std::size_t r, std::size_t c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw Error(ErrorKind::ShapeMismatch, what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                              ", expected " + std::to_string(r) + "x" + std::to_string(c));
}

}  // namespace

void check_shapes(const Ruth& R) {
  const auto& G = R.G;
  if (R.cx.objects() != G.num_objects()) throw Error(ErrorKind::ShapeMismatch, "complex object count");
  const int n = G.num_arrows();
  if (static_cast<int>(R.R1C.size()) != n || static_cast<int>(R.R1V.size()) != n ||
      R.R2.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorKind::ShapeMismatch, "R1/R2 table sizes");
  for (int g = 0; g < n; ++g) {
    expect(R.R1C[g], R.c(G.t(g)), R.c(G.s(g)), "R1C(" + aname(R, g) + ")");
    expect(R.R1V[g], R.v(G.t(g)), R.v(G.s(g)), "R1V(" + aname(R, g) + ")");
    for (int h = 0; h < n; ++h)
      if (G.composable(g, h))
        expect(R.r2(g, h), R.c(G.t(g)), R.v(G.s(h)), "R2(" + aname(R, g) + "," + aname(R, h) + ")");
  }
}

Report check_structure(const Ruth& R) {
  check_shapes(R);
  Report rep;
  const auto& G = R.G;
  const int n = G.num_arrows();
  for (int g = 0; g < n; ++g) {
    ++rep.checked;
    Matrix res = R.d(G.t(g)) * R.R1C[g] - R.R1V[g] * R.d(G.s(g));
    if (!res.is_zero())
      rep.fail("R1 is a chain map: d R1C(g) = R1V(g) d", "g=" + aname(R, g) + " residual=" + to_string(res));
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (!G.composable(g, h)) continue;
      const int gh = G.mul(g, h);
      ++rep.checked;
      Matrix resC = R.R1C[g] * R.R1C[h] - R.R1C[gh] - R.r2(g, h) * R.d(G.s(h));
      if (!resC.is_zero())
        rep.fail("curvature on C: R1C(g)R1C(h) - R1C(gh) = R2(g,h) d",
                 "(g,h)=(" + aname(R, g) + "," + aname(R, h) + ") residual=" + to_string(resC));
      Matrix resV = R.R1V[g] * R.R1V[h] - R.R1V[gh] - R.d(G.t(g)) * R.r2(g, h);
      if (!resV.is_zero())
        rep.fail("curvature on V: R1V(g)R1V(h) - R1V(gh) = d R2(g,h)",
                 "(g,h)=(" + aname(R, g) + "," + aname(R, h) + ") residual=" + to_string(resV));
    }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (!G.composable(g, h)) continue;
      for (int k = 0; k < n; ++k) {
        if (!G.composable(h, k)) continue;
        ++rep.checked;
        Matrix res = R.R1C[g] * R.r2(h, k) - R.r2(G.mul(g, h), k) + R.r2(g, G.mul(h, k)) - R.r2(g, h) * R.R1V[k];
        if (!res.is_zero())
          rep.fail("R2 is a covariant cocycle: R1C(g)R2(h,k) - R2(gh,k) + R2(g,hk) - R2(g,h)R1V(k) = 0",
                   "(g,h,k)=(" + aname(R, g) + "," + aname(R, h) + "," + aname(R, k) + ") residual=" + to_string(res));
      }
    }
  return rep;
}

Report check_unital(const Ruth& R) {
  check_shapes(R);
  Report rep;
  const auto& G = R.G;
  for (int x = 0; x < G.num_objects(); ++x) {
    const int u = G.unit[x];
    ++rep.checked;
    if (!R.R1C[u].is_identity() || !R.R1V[u].is_identity())
      rep.fail("unital: R1(1_x) = 1", "x=" + G.objects[x]);
    for (int g = 0; g < G.num_arrows(); ++g) {
      if (G.t(g) == x && !R.r2(u, g).is_zero())
        rep.fail("unital: R2(1,g) = 0", "g=" + aname(R, g));
      if (G.s(g) == x && !R.r2(g, u).is_zero())
        rep.fail("unital: R2(g,1) = 0", "g=" + aname(R, g));
    }
  }
  return rep;
}

bool is_flat(const Ruth& R) {
  for (const auto& m : R.R2)
    if (!m.is_zero()) return false;
  return true;
}

namespace {

// Lazily built nerve indices shared by one computation.
class Ctx {
 public:
  explicit Ctx(const Ruth& R) : R(R) {}
  const Ruth& R;
  const NerveIndex& nerve(int n) const {
    auto& slot = cache_[n];
    if (!slot) slot = std::make_unique<NerveIndex>(R.G, n);
    return *slot;
  }

 private:
  mutable std::map<int, std::unique_ptr<NerveIndex>> cache_;
};

std::size_t fiber_dim(const Ruth& R, int x, bool isV) { return isV ? R.v(x) : R.c(x); }

const Matrix& R1(const Ruth& R, int g, bool isV) { return isV ? R.R1V[g] : R.R1C[g]; }

std::vector<Vector> zero_values(const Ctx& c, int m, bool isV) {
  std::vector<Vector> out;
  if (m < 0) return out;
  for (const auto& t : c.nerve(m).tuples()) out.emplace_back(fiber_dim(c.R, target_object(c.R.G, t), isV));
  return out;
}

// Df(s) = R1(g1) f(d0 s) + sum_{k>=1} (-1)^k f(d_k s), for f of degree m.
std::vector<Vector> coboundary(const Ctx& c, const std::vector<Vector>& f, int m, bool isV) {
  const auto& in = c.nerve(m);
  const auto& out = c.nerve(m + 1);
  std::vector<Vector> r;
  r.reserve(out.size());
  for (const auto& s : out.tuples()) {
    Vector val = R1(c.R, s.arrows[0], isV) * f[in.index(face(c.R.G, s, 0))];
    for (int k = 1; k <= m + 1; ++k) {
      const Vector& fk = f[in.index(face(c.R.G, s, k))];
      if (k % 2) val = val - fk;
      else val = val + fk;
    }
    r.push_back(std::move(val));
  }
  return r;
}

RuthCochain delta_impl(const Ctx& c, const RuthCochain& f) {
  const Ruth& R = c.R;
  const auto& G = R.G;
  const int n = f.degree;
  RuthCochain out;
  out.degree = n + 1;
  out.f0 = coboundary(c, f.f0, n, false);
  const auto& nn = c.nerve(n);
  // V part of the output has degree n: d f0 + D_V f1.
  out.f1.resize(nn.size());
  for (std::size_t i = 0; i < nn.size(); ++i) out.f1[i] = R.d(target_object(G, nn[i])) * f.f0[i];
  if (n >= 1) {
    auto dv = coboundary(c, f.f1, n - 1, true);
    for (std::size_t i = 0; i < nn.size(); ++i) out.f1[i] = out.f1[i] + dv[i];
    // R2 cup f1 on G^(n+1).
    const auto& big = c.nerve(n + 1);
    const auto& tail_idx = c.nerve(n - 1);
    for (std::size_t i = 0; i < big.size(); ++i) {
      const auto& s = big[i];
      NerveTuple tail;
      if (n == 1) tail.object = G.s(s.arrows[1]);
      else tail.arrows.assign(s.arrows.begin() + 2, s.arrows.end());
      out.f0[i] = out.f0[i] + R.r2(s.arrows[0], s.arrows[1]) * f.f1[tail_idx.index(tail)];
    }
  }
  const Rational s0 = (n % 2) ? -1 : 1;
  for (auto& v : out.f0) v = s0 * v;
  for (auto& v : out.f1) v = (-s0) * v;
  return out;
}

// (nu f)(t) = (-1)^m sum_{k<m} (-1)^k f(u_k t), f of degree m.
std::vector<Vector> nu_part(const Ctx& c, const std::vector<Vector>& f, int m, bool isV) {
  if (m <= 0) return {};
  const auto& in = c.nerve(m);
  std::vector<Vector> r = zero_values(c, m - 1, isV);
  const auto& out = c.nerve(m - 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int k = 0; k < m; ++k) {
      const Vector& x = f[in.index(degeneracy(c.R.G, out[i], k))];
      r[i] = ((m + k) % 2) ? r[i] - x : r[i] + x;
    }
  }
  return r;
}

// (eta f)(t) = -avg_{t g = x_last} f(t, g), f of degree m >= 1.
std::vector<Vector> eta_part(const Ctx& c, const std::vector<Vector>& f, int m, bool isV) {
  if (m <= 0) return {};
  const auto& G = c.R.G;
  const auto& in = c.nerve(m);
  const auto& out = c.nerve(m - 1);
  std::vector<Vector> r = zero_values(c, m - 1, isV);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& t = out[i];
    const int x = basepoint(G, t, static_cast<int>(t.degree()));
    int count = 0;
    for (int g = 0; g < G.num_arrows(); ++g) {
      if (G.t(g) != x) continue;
      NerveTuple ext;
      ext.arrows = t.arrows;
      ext.arrows.push_back(g);
      r[i] = r[i] - f[in.index(ext)];
      ++count;
    }
    r[i] = Rational(1, count) * r[i];
  }
  return r;
}

RuthCochain nu_impl(const Ctx& c, const RuthCochain& f) {
  RuthCochain out;
  out.degree = f.degree - 1;
  out.f0 = nu_part(c, f.f0, f.degree, false);
  out.f1 = nu_part(c, f.f1, f.degree - 1, true);
  return out;
}

RuthCochain eta_impl(const Ctx& c, const RuthCochain& f) {
  RuthCochain out;
  out.degree = f.degree - 1;
  out.f0 = eta_part(c, f.f0, f.degree, false);
  out.f1 = eta_part(c, f.f1, f.degree - 1, true);
  return out;
}

void check_cochain(const Ctx& c, const RuthCochain& f) {
  const std::size_t n0 = c.nerve(f.degree).size();
  const std::size_t n1 = f.degree >= 1 ? c.nerve(f.degree - 1).size() : 0;
  if (f.degree < 0 || f.f0.size() != n0 || f.f1.size() != n1)
    throw Error(ErrorKind::ShapeMismatch, "cochain of degree " + std::to_string(f.degree) + " has wrong tuple count");
}

}  // namespace

CochainSpace::CochainSpace(const Ruth& R, int degree) : R_(&R), n_(degree), n0_(R.G, degree), n1_(R.G, degree - 1) {
  for (std::size_t i = 0; i < n0_.size(); ++i) {
    off0_.push_back(dim_);
    dim_ += R.c(target_object(R.G, n0_[i]));
  }
  for (std::size_t i = 0; i < n1_.size(); ++i) {
    off1_.push_back(dim_);
    dim_ += R.v(target_object(R.G, n1_[i]));
  }
}

RuthCochain CochainSpace::zero() const { return unflatten(Vector(dim_)); }

RuthCochain CochainSpace::unflatten(const Vector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::ShapeMismatch, "flat cochain length");
  RuthCochain f;
  f.degree = n_;
  for (std::size_t i = 0; i < n0_.size(); ++i) {
    const std::size_t k = R_->c(target_object(R_->G, n0_[i]));
    f.f0.emplace_back(x.begin() + off0_[i], x.begin() + off0_[i] + k);
  }
  for (std::size_t i = 0; i < n1_.size(); ++i) {
    const std::size_t k = R_->v(target_object(R_->G, n1_[i]));
    f.f1.emplace_back(x.begin() + off1_[i], x.begin() + off1_[i] + k);
  }
  return f;
}

Vector CochainSpace::flatten(const RuthCochain& f) const {
  if (f.degree != n_ || f.f0.size() != n0_.size() || f.f1.size() != n1_.size())
    throw Error(ErrorKind::DegreeMismatch, "cochain does not belong to this space");
  Vector x;
  x.reserve(dim_);
  for (const auto& v : f.f0) x.insert(x.end(), v.begin(), v.end());
  for (const auto& v : f.f1) x.insert(x.end(), v.begin(), v.end());
  if (x.size() != dim_) throw Error(ErrorKind::ShapeMismatch, "cochain value lengths");
  return x;
}

RuthCochain CochainSpace::basis(std::size_t i) const {
  Vector x(dim_);
  x.at(i) = 1;
  return unflatten(x);
}

RuthCochain differential(const Ruth& R, const RuthCochain& f) {
  Ctx c(R);
  check_cochain(c, f);
  return delta_impl(c, f);
}

RuthCochain nu(const Ruth& R, const RuthCochain& f) {
  Ctx c(R);
  check_cochain(c, f);
  return nu_impl(c, f);
}

RuthCochain contraction_eta(const Ruth& R, const RuthCochain& f) {
  Ctx c(R);
  check_cochain(c, f);
  if (f.degree < 1) throw Error(ErrorKind::DegreeTooLow, "eta needs degree >= 1");
  return eta_impl(c, f);
}

bool normalized_check(const Ruth& R, const RuthCochain& f) {
  Ctx c(R);
  check_cochain(c, f);
  auto nf = nu_impl(c, f);
  for (const auto& v : nf.f0)
    if (!is_zero(v)) return false;
  for (const auto& v : nf.f1)
    if (!is_zero(v)) return false;
  auto units_vanish = [&](const std::vector<Vector>& part, int m) {
    if (m < 1) return true;
    const auto& idx = c.nerve(m);
    for (int x = 0; x < R.G.num_objects(); ++x) {
      NerveTuple t;
      t.arrows.assign(m, R.G.unit[x]);
      if (!is_zero(part[idx.index(t)])) return false;
    }
    return true;
  };
  return units_vanish(f.f0, f.degree) && units_vanish(f.f1, f.degree - 1);
}

Matrix operator_matrix(const Ruth& R, int n, RuthOp op) {
  const int m = op == RuthOp::Delta ? n + 1 : n - 1;
  if (m < 0) return Matrix(0, CochainSpace(R, n).dim());
  CochainSpace in(R, n), out(R, m);
  Ctx c(R);
  Matrix M(out.dim(), in.dim());
  for (std::size_t j = 0; j < in.dim(); ++j) {
    RuthCochain e = in.basis(j);
    RuthCochain y = op == RuthOp::Delta ? delta_impl(c, e) : op == RuthOp::Nu ? nu_impl(c, e) : eta_impl(c, e);
    Vector col = out.flatten(y);
    for (std::size_t i = 0; i < col.size(); ++i)
      if (sgn(col[i]) != 0) M(i, j) = col[i];
  }
  return M;
}

std::vector<Vector> normalized_basis(const Ruth& R, int n) {
  CochainSpace sp(R, n);
  Matrix nuM = operator_matrix(R, n, RuthOp::Nu);
  // Unit evaluations are rows of indicator cochains, which keeps the
  // coordinate layout private to CochainSpace.
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < nuM.rows(); ++i) {
    Vector r(sp.dim());
    for (std::size_t j = 0; j < sp.dim(); ++j) r[j] = nuM(i, j);
    rows.push_back(r);
  }
  auto unit_part = [&](bool isV) {
    const int m = isV ? n - 1 : n;
    if (m < 1) return;
    const NerveIndex& idx = isV ? sp.nerve1() : sp.nerve0();
    for (int x = 0; x < R.G.num_objects(); ++x) {
      NerveTuple t;
      t.arrows.assign(m, R.G.unit[x]);
      const std::size_t k = idx.index(t);
      const std::size_t len = isV ? R.v(x) : R.c(x);
      for (std::size_t e = 0; e < len; ++e) {
        RuthCochain f = sp.zero();
        (isV ? f.f1 : f.f0)[k][e] = 1;
        rows.push_back(sp.flatten(f));
      }
    }
  };
  unit_part(false);
  unit_part(true);
  Matrix A(rows.size(), sp.dim());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < sp.dim(); ++j) A(i, j) = rows[i][j];
  return kernel_basis(A);
}

Report normalization_check(const Ruth& R, int max_degree) {
  Report rep;
  for (int n = 0; n <= max_degree; ++n) {
    CochainSpace sp(R, n);
    for (const auto& x : normalized_basis(R, n)) {
      ++rep.checked;
      RuthCochain f = sp.unflatten(x);
      RuthCochain df = differential(R, f);
      if (!normalized_check(R, df)) {
        rep.fail("delta preserves normalized cochains", "degree " + std::to_string(n) + " basis vector " + to_string(Matrix::column(x)));
        return rep;
      }
    }
  }
  return rep;
}

Report contraction_check(const Ruth& R, int n) {
  if (n < 2) throw Error(ErrorKind::DegreeTooLow, "the contraction is a homotopy from degree 2 on");
  Report rep;
  Matrix lhs = operator_matrix(R, n - 1, RuthOp::Delta) * operator_matrix(R, n, RuthOp::Eta) +
               operator_matrix(R, n + 1, RuthOp::Eta) * operator_matrix(R, n, RuthOp::Delta);
  ++rep.checked;
  if (!lhs.is_identity()) {
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j)
        if (lhs(i, j) != (i == j ? 1 : 0)) {
          rep.fail("[delta, eta] = 1 in degree " + std::to_string(n),
                   "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + to_string(lhs(i, j)));
          return rep;
        }
  }
  return rep;
}

std::vector<std::size_t> cohomology_dims(const Ruth& R, int max_degree) {
  if (max_degree < 0) throw Error(ErrorKind::BadParams, "negative degree");
  if (max_degree > nerve_cap())
    throw Error(ErrorKind::NerveCapExceeded,
                "degree " + std::to_string(max_degree) + " > cap " + std::to_string(nerve_cap()));
  auto rep = check_structure(R);
  if (!rep.ok()) throw Error(ErrorKind::StructureNotVerified, rep.violations.front().property);
  std::vector<std::size_t> ranks, dims;
  for (int n = 0; n <= max_degree; ++n) {
    Matrix D = differential_matrix(R, n);
    dims.push_back(D.cols());
    ranks.push_back(rank(D));
  }
  std::vector<std::size_t> h;
  for (int n = 0; n <= max_degree; ++n) h.push_back(dims[n] - ranks[n] - (n ? ranks[n - 1] : 0));
  return h;
}

Matrix block_CV(const Ruth& R, int tgt, int src, const Matrix& cc, const Matrix& cv, const Matrix& vc,
                const Matrix& vv) {
  const std::size_t ct = R.c(tgt), vt = R.v(tgt), cs = R.c(src), vs = R.v(src);
  Matrix m(ct + vt, cs + vs);
  if (!cc.empty()) m.set_block(0, 0, cc);
  if (!cv.empty()) m.set_block(0, cs, cv);
  if (!vc.empty()) m.set_block(ct, 0, vc);
  if (!vv.empty()) m.set_block(ct, cs, vv);
  return m;
}

DglaElement dgla_of(const Ruth& R) {
  const auto& G = R.G;
  DglaElement e;
  DglaComponent d{0, 1, {}}, r1{1, 0, {}}, r2{2, -1, {}};
  for (int x = 0; x < G.num_objects(); ++x) d.values.push_back(block_CV(R, x, x, {}, {}, R.d(x), {}));
  for (const auto& t : nerve(G, 1)) {
    int g = t.arrows[0];
    r1.values.push_back(block_CV(R, G.t(g), G.s(g), R.R1C[g], {}, {}, R.R1V[g]));
  }
  for (const auto& t : nerve(G, 2)) {
    int g = t.arrows[0], h = t.arrows[1];
    r2.values.push_back(block_CV(R, G.t(g), G.s(h), {}, R.r2(g, h), {}, {}));
  }
  e.parts = {d, r1, r2};
  return e;
}

namespace {

DglaComponent product_part(const Ctx& c, const DglaComponent& a, const DglaComponent& b) {
  const auto& G = c.R.G;
  DglaComponent r{a.ell + b.ell, a.internal + b.internal, {}};
  const auto& ia = c.nerve(a.ell);
  const auto& ib = c.nerve(b.ell);
  const Rational sign = ((a.ell * b.total()) % 2) ? -1 : 1;
  for (const auto& s : c.nerve(r.ell).tuples()) {
    NerveTuple sa, sb;
    if (a.ell == 0) sa.object = basepoint(G, s, 0);
    else sa.arrows.assign(s.arrows.begin(), s.arrows.begin() + a.ell);
    if (b.ell == 0) sb.object = basepoint(G, s, a.ell);
    else sb.arrows.assign(s.arrows.begin() + a.ell, s.arrows.end());
    r.values.push_back(sign * (a.values[ia.index(sa)] * b.values[ib.index(sb)]));
  }
  return r;
}

void accumulate(DglaElement& e, DglaComponent p, const Rational& s) {
  for (auto& q : e.parts)
    if (q.ell == p.ell && q.internal == p.internal) {
      for (std::size_t i = 0; i < q.values.size(); ++i) q.values[i] += s * p.values[i];
      return;
    }
  if (s != 1)
    for (auto& v : p.values) v *= s;
  e.parts.push_back(std::move(p));
}

}  // namespace

DglaElement dgla_add(const DglaElement& a, const DglaElement& b, const Rational& sb) {
  DglaElement r = a;
  for (const auto& p : b.parts) accumulate(r, p, sb);
  return r;
}

DglaElement dgla_product(const Ruth& R, const DglaElement& a, const DglaElement& b) {
  Ctx c(R);
  DglaElement r;
  for (const auto& p : a.parts)
    for (const auto& q : b.parts) {
      const int internal = p.internal + q.internal;
      if (internal < -1 || internal > 1) continue;  // vanishes on C+V
      accumulate(r, product_part(c, p, q), 1);
    }
  return r;
}

DglaElement dgla_bracket(const Ruth& R, const DglaElement& a, const DglaElement& b) {
  Ctx c(R);
  DglaElement r;
  for (const auto& p : a.parts)
    for (const auto& q : b.parts) {
      const int internal = p.internal + q.internal;
      if (internal < -1 || internal > 1) continue;
      accumulate(r, product_part(c, p, q), 1);
      accumulate(r, product_part(c, q, p), ((p.total() * q.total()) % 2) ? 1 : -1);
    }
  return r;
}

DglaElement dgla_differential(const Ruth& R, const DglaElement& a) {
  Ctx c(R);
  DglaElement r;
  for (const auto& p : a.parts) {
    DglaComponent q{p.ell + 1, p.internal, {}};
    const auto& in = c.nerve(p.ell);
    const Rational sign = (p.total() % 2) ? -1 : 1;
    for (const auto& s : c.nerve(p.ell + 1).tuples()) {
      const auto& G = R.G;
      Matrix v(0, 0);
      bool first = true;
      for (int k = 1; k <= p.ell; ++k) {
        Matrix term = ((k % 2) ? Rational(-1) : Rational(1)) * p.values[in.index(face(G, s, k))];
        if (first) v = term;
        else v += term;
        first = false;
      }
      if (first) {
        const int t = basepoint(G, s, 0), src = basepoint(G, s, p.ell + 1);
        v = Matrix(R.c(t) + R.v(t), R.c(src) + R.v(src));
      }
      q.values.push_back(sign * v);
    }
    accumulate(r, std::move(q), 1);
  }
  return r;
}

DglaElement mc_residual(const Ruth& R) {
  check_shapes(R);
  DglaElement e = dgla_of(R);
  return dgla_add(dgla_differential(R, e), dgla_bracket(R, e, e), Rational(1, 2));
}

bool dgla_is_zero(const DglaElement& a) {
  for (const auto& p : a.parts)
    for (const auto& v : p.values)
      if (!v.is_zero()) return false;
  return true;
}

std::string dgla_witness(const Ruth& R, const DglaElement& a) {
  for (const auto& p : a.parts) {
    NerveIndex idx(R.G, p.ell);
    for (std::size_t i = 0; i < p.values.size(); ++i)
      if (!p.values[i].is_zero()) {
        std::ostringstream os;
        os << "bidegree (" << p.ell << "," << p.internal << ") at " << describe(R.G, idx[i]) << ": "
           << to_string(p.values[i]);
        return os.str();
      }
  }
  return {};
}

}  // namespace fatlab
