#include "fatlab/infinitesimal.hpp"

#include <utility>

namespace fatlab {

namespace {

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector basis_vector(std::size_t n, std::size_t i) {
  Vector e = zero_vector(n);
  e[i] = 1;
  return e;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix combine(const std::vector<Matrix>& ms, const Vector& x, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out += x[i] * ms[i];
  return out;
}

Rational det(Matrix a) {
  const std::size_t k = a.rows();
  Rational out = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t p = col;
    while (p < k && a(p, col) == 0) ++p;
    if (p == k) return 0;
    if (p != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a(p, j), a(col, j));
      out = -out;
    }
    out *= a(col, col);
    for (std::size_t r = col + 1; r < k; ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < k; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return out;
}

Rational sign(std::size_t i) { return (i % 2) ? -1 : 1; }

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class T>
std::vector<T> drop(const std::vector<T>& v, std::size_t i) {
  std::vector<T> out;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != i) out.push_back(v[j]);
  return out;
}

template <class T>
std::vector<T> drop2(const std::vector<T>& v, std::size_t i, std::size_t j) {
  std::vector<T> out;
  for (std::size_t l = 0; l < v.size(); ++l)
    if (l != i && l != j) out.push_back(v[l]);
  return out;
}

std::vector<Vector> basis_args(std::size_t n, const std::vector<std::size_t>& t) {
  std::vector<Vector> out;
  for (std::size_t i : t) out.push_back(basis_vector(n, i));
  return out;
}

Vector mat_vec(const Matrix& a, const Vector& v) { return a * v; }

}  // namespace

// Lie algebras.

LieAlgebra abelian_lie(std::size_t n) { return {n, std::vector<Vector>(n * n, zero_vector(n))}; }

LieAlgebra sl2() {
  // e0 = h, e1 = e, e2 = f
  LieAlgebra L = abelian_lie(3);
  auto set = [&](std::size_t i, std::size_t j, Vector v) {
    L.c[i * 3 + j] = v;
    L.c[j * 3 + i] = Rational(-1) * v;
  };
  set(0, 1, {0, 2, 0});
  set(0, 2, {0, 0, -2});
  set(1, 2, {1, 0, 0});
  return L;
}

Vector lie_bracket(const LieAlgebra& L, const Vector& x, const Vector& y) {
  Vector out = zero_vector(L.n);
  for (std::size_t i = 0; i < L.n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < L.n; ++j)
      if (y[j] != 0) out = out + (x[i] * y[j]) * L.bracket_basis(i, j);
  }
  return out;
}

Report lie_check(const LieAlgebra& L) {
  Report rep;
  const std::size_t n = L.n;
  if (L.c.size() != n * n) throw Error(ErrorKind::ShapeMismatch, "Lie algebra: need n^2 brackets");
  for (const auto& v : L.c)
    if (v.size() != n) throw Error(ErrorKind::ShapeMismatch, "Lie algebra: bracket of the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ++rep.checked;
      if (L.bracket_basis(i, j) + L.bracket_basis(j, i) != zero_vector(n))
        rep.fail("the bracket is antisymmetric", "e" + std::to_string(i) + ", e" + std::to_string(j));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++rep.checked;
        Vector ei = basis_vector(n, i), ej = basis_vector(n, j), ek = basis_vector(n, k);
        Vector s = lie_bracket(L, ei, L.bracket_basis(j, k)) + lie_bracket(L, ej, L.bracket_basis(k, i)) +
                   lie_bracket(L, ek, L.bracket_basis(i, j));
        if (!is_zero(s))
          rep.fail("the Jacobi identity", "e" + std::to_string(i) + ", e" + std::to_string(j) + ", e" + std::to_string(k));
      }
  return rep;
}

// Ruths.

Matrix LieRuth::nablaC(const Vector& x) const { return combine(C, x, c(), c()); }
Matrix LieRuth::nablaV(const Vector& x) const { return combine(V, x, v(), v()); }

Matrix LieRuth::r2(const Vector& x, const Vector& y) const {
  Matrix out(c(), v());
  for (std::size_t i = 0; i < g.n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < g.n; ++j)
      if (y[j] != 0) out += (x[i] * y[j]) * r2(i, j);
  }
  return out;
}

void check_shapes(const LieRuth& R) {
  const std::size_t n = R.g.n;
  if (R.C.size() != n || R.V.size() != n || R.R2.size() != n * n)
    throw Error(ErrorKind::ShapeMismatch, "Lie ruth: need one connection matrix per basis element and n^2 curvatures");
  for (std::size_t i = 0; i < n; ++i) {
    if (R.C[i].rows() != R.c() || R.C[i].cols() != R.c()) throw Error(ErrorKind::ShapeMismatch, "nablaC(e" + std::to_string(i) + ")");
    if (R.V[i].rows() != R.v() || R.V[i].cols() != R.v()) throw Error(ErrorKind::ShapeMismatch, "nablaV(e" + std::to_string(i) + ")");
  }
  for (const auto& m : R.R2)
    if (m.rows() != R.c() || m.cols() != R.v()) throw Error(ErrorKind::ShapeMismatch, "R2 entries are maps V -> C");
}

Report la_check(const LieRuth& R) {
  check_shapes(R);
  Report rep = lie_check(R.g);
  const std::size_t n = R.g.n;
  auto e = [&](std::size_t i) { return basis_vector(n, i); };
  auto name = [](std::size_t i) { return "e" + std::to_string(i); };
  auto cov = [&](const Vector& a, const Matrix& h) { return R.nablaC(a) * h - h * R.nablaV(a); };
  for (std::size_t i = 0; i < n; ++i) {
    ++rep.checked;
    if (R.d * R.C[i] != R.V[i] * R.d) rep.fail("d nablaC = nablaV d", name(i));
    for (std::size_t j = 0; j < n; ++j) {
      ++rep.checked;
      std::string w = name(i) + ", " + name(j);
      if (R.r2(i, j) != -R.r2(j, i)) rep.fail("R2 is antisymmetric", w);
      const Vector& br = R.g.bracket_basis(i, j);
      if (R.nablaC(br) - commutator(R.C[i], R.C[j]) != R.r2(i, j) * R.d)
        rep.fail("curvature on C: nabla[a,b] - [nabla_a, nabla_b] = R2(a,b) d", w);
      if (R.nablaV(br) - commutator(R.V[i], R.V[j]) != R.d * R.r2(i, j))
        rep.fail("curvature on V: nabla[a,b] - [nabla_a, nabla_b] = d R2(a,b)", w);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++rep.checked;
        Matrix s(R.c(), R.v());
        const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (const auto& t : cyc)
          s += cov(e(t[0]), R.r2(t[1], t[2])) - R.r2(R.g.bracket_basis(t[0], t[1]), e(t[2]));
        if (!s.is_zero()) rep.fail("covariant cocycle equation for R2", name(i) + ", " + name(j) + ", " + name(k));
      }
  return rep;
}

// The fat Lie algebra.

FatLieElement fat_bracket(const LieRuth& R, const FatLieElement& x, const FatLieElement& y) {
  auto cov = [&](const Vector& a, const Matrix& h) { return R.nablaC(a) * h - h * R.nablaV(a); };
  Matrix h = R.r2(x.a, y.a) + cov(x.a, y.h) - cov(y.a, x.h) + y.h * R.d * x.h - x.h * R.d * y.h;
  return {h, lie_bracket(R.g, x.a, y.a)};
}

ChainPair fat_lie_rep(const LieRuth& R, const FatLieElement& x) {
  return {R.nablaC(x.a) - x.h * R.d, R.nablaV(x.a) - R.d * x.h};
}

std::size_t fat_dim(const LieRuth& R) { return R.c() * R.v() + R.g.n; }

FatLieElement fat_from_coords(const LieRuth& R, const Vector& x) {
  FatLieElement out{Matrix(R.c(), R.v()), zero_vector(R.g.n)};
  const std::size_t hv = R.c() * R.v();
  for (std::size_t i = 0; i < hv; ++i) out.h(i / R.v(), i % R.v()) = x[i];
  for (std::size_t i = 0; i < R.g.n; ++i) out.a[i] = x[hv + i];
  return out;
}

Vector fat_coords(const LieRuth& R, const FatLieElement& x) {
  Vector out = x.h.entries();
  out.insert(out.end(), x.a.begin(), x.a.end());
  (void)R;
  return out;
}

FatLieElement fat_basis(const LieRuth& R, std::size_t k) { return fat_from_coords(R, basis_vector(fat_dim(R), k)); }

LieAlgebra fat_lie_algebra(const LieRuth& R) {
  const std::size_t N = fat_dim(R);
  LieAlgebra L{N, {}};
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) L.c.push_back(fat_coords(R, fat_bracket(R, fat_basis(R, p), fat_basis(R, q))));
  return L;
}

Report fat_jacobi_check(const LieRuth& R) {
  check_shapes(R);
  const std::size_t N = fat_dim(R);
  Report rep;
  std::vector<FatLieElement> b;
  for (std::size_t p = 0; p < N; ++p) b.push_back(fat_basis(R, p));
  auto br = [&](const FatLieElement& x, const FatLieElement& y) { return fat_bracket(R, x, y); };
  auto coords = [&](const FatLieElement& x) { return fat_coords(R, x); };
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p; q < N; ++q) {
      ++rep.checked;
      if (!is_zero(coords(br(b[p], b[q])) + coords(br(b[q], b[p]))))
        rep.fail("the fat bracket is antisymmetric", "basis " + std::to_string(p) + ", " + std::to_string(q));
    }
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q)
      for (std::size_t r = q + 1; r < N; ++r) {
        ++rep.checked;
        Vector s = coords(br(b[p], br(b[q], b[r]))) + coords(br(b[q], br(b[r], b[p]))) + coords(br(b[r], br(b[p], b[q])));
        if (!is_zero(s))
          rep.fail("the Jacobi identity for the fat bracket",
                   "basis " + std::to_string(p) + ", " + std::to_string(q) + ", " + std::to_string(r));
      }
  return rep;
}

// Chevalley-Eilenberg forms.

std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, int k) {
  std::vector<std::vector<std::size_t>> out;
  if (k < 0 || static_cast<std::size_t>(k) > n) return out;
  std::vector<std::size_t> t(k);
  for (int i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

std::size_t tuple_index(std::size_t n, const std::vector<std::size_t>& t) {
  const std::size_t k = t.size();
  std::size_t rank = 0, start = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = start; j < t[i]; ++j) rank += binom(n - 1 - j, k - 1 - i);
    start = t[i] + 1;
  }
  return rank;
}

CEForm ce_zero(std::size_t n, std::size_t m, int k) {
  CEForm w{k, n, m, {}};
  w.values.assign(k < 0 ? 0 : binom(n, k), zero_vector(m));
  return w;
}

Vector ce_eval(const CEForm& w, const std::vector<Vector>& args) {
  const std::size_t k = args.size();
  if (static_cast<int>(k) != w.degree) throw Error(ErrorKind::DegreeMismatch, "form evaluated on the wrong number of arguments");
  Vector out = zero_vector(w.m);
  if (k == 0) return w.values.empty() ? out : w.values[0];
  auto tuples = increasing_tuples(w.n, static_cast<int>(k));
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    if (is_zero(w.values[s])) continue;
    Matrix M(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) M(r, c) = args[r][tuples[s][c]];
    Rational dt = det(M);
    if (dt != 0) out = out + dt * w.values[s];
  }
  return out;
}

CEForm ce_D(const LieAlgebra& L, const std::function<Matrix(std::size_t)>& action, const CEForm& w) {
  const int k = w.degree;
  CEForm out = ce_zero(L.n, w.m, k + 1);
  auto tuples = increasing_tuples(L.n, k + 1);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    const auto& x = tuples[s];
    Vector val = zero_vector(w.m);
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto rest = drop(x, i);
      val = val + sign(i) * mat_vec(action(x[i]), w.values[tuple_index(L.n, rest)]);
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        std::vector<Vector> args{L.bracket_basis(x[i], x[j])};
        for (auto& a : basis_args(L.n, drop2(x, i, j))) args.push_back(std::move(a));
        val = val + sign(i + j) * ce_eval(w, args);
      }
    out.values[s] = val;
  }
  return out;
}

// The pair complex.

CEPair ce_pair_zero(const LieRuth& R, int k) { return {k, ce_zero(R.g.n, R.c(), k), ce_zero(R.g.n, R.v(), k - 1)}; }

std::size_t ce_pair_dim(const LieRuth& R, int k) {
  std::size_t d = binom(R.g.n, k) * R.c();
  if (k >= 1) d += binom(R.g.n, k - 1) * R.v();
  return d;
}

Vector ce_flatten(const CEPair& p) {
  Vector out;
  for (const auto& v : p.w0.values) out.insert(out.end(), v.begin(), v.end());
  for (const auto& v : p.w1.values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

CEPair ce_unflatten(const LieRuth& R, int k, const Vector& x) {
  CEPair p = ce_pair_zero(R, k);
  std::size_t pos = 0;
  for (auto& v : p.w0.values)
    for (auto& e : v) e = x.at(pos++);
  for (auto& v : p.w1.values)
    for (auto& e : v) e = x.at(pos++);
  return p;
}

CEPair ce_differential(const LieRuth& R, const CEPair& p) {
  const std::size_t n = R.g.n;
  const int k = p.degree;
  CEPair out = ce_pair_zero(R, k + 1);
  CEForm D0 = ce_D(R.g, [&](std::size_t i) { return R.C[i]; }, p.w0);
  auto tuples = increasing_tuples(n, k + 1);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    const auto& x = tuples[s];
    Vector val = D0.values[s];
    if (k >= 1)
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
          const Vector& w = p.w1.values[tuple_index(n, drop2(x, i, j))];
          // - (R2 ^ w1), with the sign (-1)^(i+j+1) inside the wedge
          val = val + sign(i + j) * mat_vec(R.r2(x[i], x[j]), w);
        }
    out.w0.values[s] = val;
  }
  CEForm D1 = k >= 1 ? ce_D(R.g, [&](std::size_t i) { return R.V[i]; }, p.w1) : ce_zero(n, R.v(), k);
  for (std::size_t s = 0; s < out.w1.values.size(); ++s)
    out.w1.values[s] = Rational(-1) * (mat_vec(R.d, p.w0.values[s]) + D1.values[s]);
  return out;
}

Matrix ce_matrix(const LieRuth& R, int k) {
  const std::size_t rows = ce_pair_dim(R, k + 1), cols = ce_pair_dim(R, k);
  Matrix M(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    Vector x = zero_vector(cols);
    x[j] = 1;
    Vector y = ce_flatten(ce_differential(R, ce_unflatten(R, k, x)));
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = y[i];
  }
  return M;
}

Report ce_square_check(const LieRuth& R, int max_degree) {
  check_shapes(R);
  Report rep;
  for (int k = 0; k < max_degree; ++k) {
    ++rep.checked;
    Matrix sq = ce_matrix(R, k + 1) * ce_matrix(R, k);
    if (!sq.is_zero()) {
      std::size_t col = 0;
      while (col < sq.cols() && is_zero(sq.col(col))) ++col;
      rep.fail("delta^2 = 0 on the Chevalley-Eilenberg complex",
               "degree " + std::to_string(k) + ", basis cochain " + std::to_string(col));
    }
  }
  return rep;
}

std::vector<std::size_t> ce_cohomology(const LieRuth& R, int max_degree) {
  auto rep = la_check(R);
  if (!rep.ok()) throw Error(ErrorKind::StructureNotVerified, "Lie ruth: " + rep.violations.front().property);
  std::vector<std::size_t> dims;
  std::size_t prev_rank = 0;
  for (int k = 0; k <= max_degree; ++k) {
    std::size_t r = rank(ce_matrix(R, k));
    dims.push_back(ce_pair_dim(R, k) - r - prev_rank);
    prev_rank = r;
  }
  return dims;
}

// Lifts to the fat algebra.

CEForm lift_w0(const LieRuth& R, const CEPair& p) {
  const std::size_t N = fat_dim(R), n = R.g.n;
  const int k = p.degree;
  CEForm out = ce_zero(N, R.c(), k);
  auto tuples = increasing_tuples(N, k);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    std::vector<FatLieElement> xs;
    std::vector<Vector> pis;
    for (std::size_t t : tuples[s]) {
      xs.push_back(fat_basis(R, t));
      pis.push_back(xs.back().a);
    }
    Vector val = ce_eval(p.w0, pis);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!xs[i].h.is_zero()) val = val + sign(i) * mat_vec(xs[i].h, ce_eval(p.w1, drop(pis, i)));
    out.values[s] = val;
  }
  (void)n;
  return out;
}

CEForm lift_w1(const LieRuth& R, const CEPair& p) {
  const std::size_t N = fat_dim(R);
  const int k = p.degree - 1;
  CEForm out = ce_zero(N, R.v(), k);
  auto tuples = increasing_tuples(N, k);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    std::vector<Vector> pis;
    for (std::size_t t : tuples[s]) pis.push_back(fat_basis(R, t).a);
    out.values[s] = ce_eval(p.w1, pis);
  }
  return out;
}

bool invariant_form_check(const LieRuth& R, const CEForm& W0, const CEForm& W1, const Matrix& h) {
  const std::size_t N = fat_dim(R);
  if (W0.degree < 1) return true;
  if (W1.degree != W0.degree - 1 || W0.n != N || W1.n != N || h.rows() != R.c() || h.cols() != R.v())
    throw Error(ErrorKind::ShapeMismatch, "invariant_form_check: forms on the fat algebra and a homotopy expected");
  Vector hx = fat_coords(R, {h, zero_vector(R.g.n)});
  for (const auto& t : increasing_tuples(N, W1.degree)) {
    std::vector<Vector> args{hx};
    for (auto& a : basis_args(N, t)) args.push_back(std::move(a));
    if (ce_eval(W0, args) != mat_vec(h, ce_eval(W1, basis_args(N, t)))) return false;
  }
  return true;
}

Report lift_check(const LieRuth& R, int max_degree, Rng& rng, int samples) {
  check_shapes(R);
  Report rep;
  LieAlgebra F = fat_lie_algebra(R);
  std::vector<Matrix> rhoC;
  for (std::size_t p = 0; p < fat_dim(R); ++p) rhoC.push_back(fat_lie_rep(R, fat_basis(R, p)).C);
  for (int k = 0; k < max_degree; ++k)
    for (int s = 0; s < samples; ++s) {
      ++rep.checked;
      CEPair p = ce_unflatten(R, k, rng.vector(ce_pair_dim(R, k)));
      CEForm lhs = ce_D(F, [&](std::size_t i) { return rhoC[i]; }, lift_w0(R, p));
      CEPair dp = ce_differential(R, p);
      CEForm rhs = lift_w0(R, dp);
      std::string w = "degree " + std::to_string(k) + " sample " + std::to_string(s);
      if (lhs.values != rhs.values) rep.fail("the lift to the fat algebra intertwines the differentials", w);
      Matrix h = rng.matrix(R.c(), R.v());
      if (!invariant_form_check(R, lift_w0(R, p), lift_w1(R, p), h)) rep.fail("lifted forms satisfy i_h W0 = h W1", w);
      if (!invariant_form_check(R, rhs, lift_w1(R, dp), h)) rep.fail("lifted forms satisfy i_h W0 = h W1", w + " after delta");
    }
  return rep;
}

LieRuth resplit(const LieRuth& R, const std::vector<Matrix>& k) {
  const std::size_t n = R.g.n;
  LieRuth S = R;
  std::vector<FatLieElement> lifts;
  for (std::size_t i = 0; i < n; ++i) {
    lifts.push_back({k[i], basis_vector(n, i)});
    auto rho = fat_lie_rep(R, lifts.back());
    S.C[i] = rho.C;
    S.V[i] = rho.V;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      S.R2[i * n + j] = fat_bracket(R, lifts[i], lifts[j]).h - combine(k, R.g.bracket_basis(i, j), R.c(), R.v());
  return S;
}

// Examples.

namespace {

LieRuth flat_ruth(const LieAlgebra& g, const Matrix& d, std::vector<Matrix> C, std::vector<Matrix> V) {
  LieRuth R{g, d, std::move(C), std::move(V), {}};
  R.R2.assign(g.n * g.n, Matrix(d.cols(), d.rows()));
  return R;
}

std::vector<Matrix> sl2_std() {
  return {Matrix{{1, 0}, {0, -1}}, Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}};
}

}  // namespace

std::vector<std::string> lie_example_names() { return {"abelian-2", "lie-d-invertible", "sl2-resplit", "sl2-std"}; }

LieRuth build_lie_example(const std::string& name) {
  if (name == "abelian-2") {
    Matrix z(1, 1);
    return flat_ruth(abelian_lie(2), z, {z, z}, {z, z});
  }
  if (name == "sl2-std") return flat_ruth(sl2(), Matrix::identity(2), sl2_std(), sl2_std());
  if (name == "sl2-resplit") {
    // C = standard + trivial, V = trivial, d the projection to the trivial summand.
    std::vector<Matrix> C, V;
    for (const auto& m : sl2_std()) {
      Matrix c(3, 3);
      c.set_block(0, 0, m);
      C.push_back(c);
      V.push_back(Matrix(1, 1));
    }
    LieRuth R = flat_ruth(sl2(), Matrix{{0, 0, 1}}, C, V);
    return resplit(R, {Matrix{{1}, {0}, {2}}, Matrix{{0}, {1}, {-1}}, Matrix{{1}, {-1}, {0}}});
  }
  if (name == "lie-d-invertible") {
    LieAlgebra g = sl2();
    Matrix d{{1, 2}, {0, 1}};
    Matrix di = inverse(d);
    std::vector<Matrix> V = {Matrix{{1, 1}, {0, 2}}, Matrix{{0, 1}, {1, 0}}, Matrix{{2, 0}, {1, -1}}};
    std::vector<Matrix> C;
    for (const auto& m : V) C.push_back(di * m * d);
    LieRuth R = flat_ruth(g, d, C, V);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        R.R2[i * 3 + j] = di * (R.nablaV(g.bracket_basis(i, j)) - commutator(V[i], V[j]));
    return R;
  }
  throw Error(ErrorKind::BadParams, "unknown Lie ruth '" + name + "'");
}

}  // namespace fatlab
