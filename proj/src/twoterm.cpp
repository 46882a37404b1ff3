#include "fatlab/twoterm.hpp"

namespace fatlab {

namespace {

void check_shapes(const Matrix& d, const Matrix& h) {
  if (h.rows() != d.cols() || h.cols() != d.rows())
    throw Error(ErrorKind::ShapeMismatch, "homotopy must be " + std::to_string(d.cols()) + "x" +
                                              std::to_string(d.rows()));
}

Matrix one_plus_dh(const Matrix& d, const Matrix& h) { return Matrix::identity(d.rows()) + d * h; }

}  // namespace

Membership h_member(const Matrix& d, const Matrix& h) {
  check_shapes(d, h);
  Membership m;
  Matrix a = one_plus_dh(d, h);
  if (!invertible(a)) return m;
  m.member = true;
  m.inv_1_dh = inverse(a);
  return m;
}

Matrix h_product(const Matrix& d, const Matrix& h, const Matrix& h2) {
  check_shapes(d, h);
  check_shapes(d, h2);
  if (!invertible(one_plus_dh(d, h)) || !invertible(one_plus_dh(d, h2)))
    throw Error(ErrorKind::NotInvertibleInput, "factor is not an invertible homotopy");
  return h + h2 + h * d * h2;
}

Matrix h_inverse(const Matrix& d, const Matrix& h) {
  auto m = h_member(d, h);
  if (!m.member) throw Error(ErrorKind::NotInvertibleInput, "1 + d h is singular");
  return -(h * m.inv_1_dh);
}

Matrix h_inverse_left(const Matrix& d, const Matrix& h) {
  check_shapes(d, h);
  Matrix a = Matrix::identity(d.cols()) + h * d;
  if (!invertible(a)) throw Error(ErrorKind::NotInvertibleInput, "1 + h d is singular");
  return -(inverse(a) * h);
}

Matrix block_embed(const Matrix& d, const Matrix& h) {
  auto m = h_member(d, h);
  if (!m.member) throw Error(ErrorKind::NotInvertibleInput, "1 + d h is singular");
  const std::size_t k = d.cols(), l = d.rows();
  Matrix e(k + l, k + l);
  e.set_block(0, 0, Matrix::identity(k));
  e.set_block(0, k, h);
  e.set_block(k, k, one_plus_dh(d, h));
  return e;
}

Matrix h_dualize(const Matrix& d, const Matrix& h) { return h_inverse(d, h).transpose(); }

Matrix hom_bracket(const Matrix& d, const Matrix& h, const Matrix& h2) {
  check_shapes(d, h);
  check_shapes(d, h2);
  return h2 * d * h - h * d * h2;
}

ChainPair h_frame(const Matrix& d, const Matrix& h) {
  check_shapes(d, h);
  return {Matrix::identity(d.cols()) + h * d, one_plus_dh(d, h)};
}

PertElement make_pert(const Matrix& d, const Matrix& h) {
  auto m = h_member(d, h);
  if (!m.member) throw Error(ErrorKind::NotInvertibleInput, "1 + d h is singular");
  return {d, h, m.inv_1_dh};
}

PertElement pert_product(const PertElement& a, const PertElement& b) {
  if (a.d != b.d) throw Error(ErrorKind::NotComposable, "perturbations over different differentials");
  Matrix h = a.h + b.h + a.h * a.d * b.h;
  return {a.d, h, b.inv_1_dh * a.inv_1_dh};
}

CanonicalForm canonical_form(const Matrix& d) {
  const std::size_t l = d.rows(), k = d.cols();
  Matrix w = hstack(d, Matrix::identity(l));
  auto piv = reduce_rows(w, k);
  CanonicalForm cf;
  cf.r = piv.size();
  cf.A = w.block(0, k, l, l);
  Matrix reduced = w.block(0, 0, l, k);
  cf.B = Matrix(k, k);
  for (std::size_t i = 0; i < piv.size(); ++i) cf.B(piv[i], i) = 1;
  auto ker = kernel_basis(reduced);
  for (std::size_t j = 0; j < ker.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) cf.B(i, cf.r + j) = ker[j][i];
  return cf;
}

bool is_canonical(const Matrix& d, std::size_t* r) {
  std::size_t rr = 0;
  while (rr < d.rows() && rr < d.cols() && d(rr, rr) == 1) ++rr;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (d(i, j) != ((i == j && i < rr) ? 1 : 0)) return false;
  if (r) *r = rr;
  return true;
}

Matrix transport_homotopy(const CanonicalForm& cf, const Matrix& h) { return inverse(cf.B) * h * inverse(cf.A); }

SemidirectParts semidirect_decompose(const Matrix& d, const Matrix& h) {
  std::size_t r = 0;
  if (!is_canonical(d, &r)) throw Error(ErrorKind::NotCanonicalForm, to_string(d));
  check_shapes(d, h);
  const std::size_t k = d.cols(), l = d.rows();
  SemidirectParts p;
  p.glr = Matrix::identity(r) + h.block(0, 0, r, r);
  if (!invertible(p.glr)) throw Error(ErrorKind::NotInvertibleInput, "1 + h4 is singular");
  p.h3 = h.block(0, r, r, l - r);
  p.h1 = h.block(r, 0, k - r, r);
  p.h2 = h.block(r, r, k - r, l - r);
  return p;
}

Matrix semidirect_reconstruct(const SemidirectParts& p) {
  const std::size_t r = p.glr.rows(), kr = p.h1.rows(), lr = p.h3.cols();
  Matrix h(r + kr, r + lr);
  h.set_block(0, 0, p.glr - Matrix::identity(r));
  h.set_block(0, r, p.h3);
  h.set_block(r, 0, p.h1);
  h.set_block(r, r, p.h2);
  return h;
}

Matrix semidirect_matrix(const SemidirectParts& p) {
  const std::size_t r = p.glr.rows(), kr = p.h1.rows(), lr = p.h3.cols();
  const std::size_t n = 2 * r + kr + lr;
  Matrix m = Matrix::identity(n);
  const std::size_t c1 = r, v0 = r + kr, v1 = v0 + r;
  m.set_block(0, v0, p.glr - Matrix::identity(r));
  m.set_block(0, v1, p.h3);
  m.set_block(c1, v0, p.h1);
  m.set_block(c1, v1, p.h2);
  m.set_block(v0, v0, p.glr);
  m.set_block(v0, v1, p.h3);
  return m;
}

bool is_chain_map(const Matrix& d1, const Matrix& d2, const Matrix& phiC, const Matrix& phiV) {
  if (phiC.rows() != d2.cols() || phiC.cols() != d1.cols() || phiV.rows() != d2.rows() ||
      phiV.cols() != d1.rows())
    throw Error(ErrorKind::ShapeMismatch, "chain map shapes");
  return d2 * phiC == phiV * d1;
}

bool quasi_iso(const Matrix& d1, const Matrix& d2, const Matrix& phiC, const Matrix& phiV) {
  if (!is_chain_map(d1, d2, phiC, phiV)) throw Error(ErrorKind::NotChainMap, "d2 PhiC != PhiV d1");
  // Injective on H^0 and surjective on H^1; with equal Euler characteristic this
  // forces both induced maps to be isomorphisms.
  const long chi1 = static_cast<long>(d1.cols()) - static_cast<long>(d1.rows());
  const long chi2 = static_cast<long>(d2.cols()) - static_cast<long>(d2.rows());
  return chi1 == chi2 && rank(vstack(phiC, d1)) == d1.cols() && rank(hstack(phiV, d2)) == d2.rows();
}

GradedComplex two_term(const Matrix& d) { return {{d.cols(), d.rows()}, {d}}; }

namespace {

void check_complex(const GradedComplex& K) {
  if (K.dims.empty() || K.d.size() + 1 != K.dims.size())
    throw Error(ErrorKind::ShapeMismatch, "graded complex needs N dims and N-1 differentials");
  for (std::size_t i = 0; i < K.d.size(); ++i)
    if (K.d[i].cols() != K.dims[i] || K.d[i].rows() != K.dims[i + 1])
      throw Error(ErrorKind::ShapeMismatch, "differential shape at degree " + std::to_string(i));
  for (std::size_t i = 0; i + 1 < K.d.size(); ++i)
    if (!(K.d[i + 1] * K.d[i]).is_zero())
      throw Error(ErrorKind::HypothesisViolated, "d^2 != 0 at degree " + std::to_string(i));
}

Matrix map_at(const GradedMap& f, std::size_t i, std::size_t rows, std::size_t cols) {
  if (i >= f.size() || f[i].rows() != rows || f[i].cols() != cols)
    throw Error(ErrorKind::ShapeMismatch, "graded map shape at degree " + std::to_string(i));
  return f[i];
}

// Composition of graded maps of degrees a and b, given the degree-wise shapes.
GradedMap compose(const GradedMap& g, const GradedMap& f, int shift_f) {
  GradedMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    long j = static_cast<long>(i) + shift_f;
    if (j < 0 || j >= static_cast<long>(g.size())) {
      out[i] = Matrix(0, f[i].cols());
      continue;
    }
    out[i] = g[j] * f[i];
  }
  return out;
}

}  // namespace

GradedMap homotopy_commutator(const GradedComplex& K, const GradedComplex& L, const GradedMap& eta) {
  const std::size_t n = K.dims.size();
  GradedMap out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix m(L.dims[i], K.dims[i]);
    if (i >= 1) m += L.d[i - 1] * map_at(eta, i, L.dims[i - 1], K.dims[i]);
    if (i + 1 < n) m += map_at(eta, i + 1, L.dims[i], K.dims[i + 1]) * K.d[i];
    out[i] = m;
  }
  return out;
}

ComposedHomotopy compose_homotopies(const GradedComplex& K1, const GradedComplex& K2, const GradedComplex& K3,
                                    const GradedMap& Phi21, const GradedMap& Psi21, const GradedMap& eta21,
                                    const GradedMap& Phi32, const GradedMap& Psi32, const GradedMap& eta32) {
  check_complex(K1);
  check_complex(K2);
  check_complex(K3);
  const std::size_t n = K1.dims.size();
  if (K2.dims.size() != n || K3.dims.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "complexes must have the same length");
  // eta[0] maps into degree -1, which is zero.
  auto leg = [&](const GradedComplex& A, const GradedComplex& B, const GradedMap& Phi, const GradedMap& Psi,
                 const GradedMap& eta, const char* name) {
    for (std::size_t i = 0; i < n; ++i) {
      map_at(Phi, i, B.dims[i], A.dims[i]);
      map_at(Psi, i, B.dims[i], A.dims[i]);
      map_at(eta, i, i ? B.dims[i - 1] : 0, A.dims[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (B.d[i] * Phi[i] != Phi[i + 1] * A.d[i] || B.d[i] * Psi[i] != Psi[i + 1] * A.d[i])
        throw Error(ErrorKind::HypothesisViolated, std::string(name) + ": not a chain map at degree " + std::to_string(i));
    }
    auto c = homotopy_commutator(A, B, eta);
    for (std::size_t i = 0; i < n; ++i)
      if (Phi[i] - Psi[i] != c[i])
        throw Error(ErrorKind::HypothesisViolated, std::string(name) + ": Phi - Psi != [d, eta] at degree " + std::to_string(i));
  };
  leg(K1, K2, Phi21, Psi21, eta21, "leg 21");
  leg(K2, K3, Phi32, Psi32, eta32, "leg 32");

  ComposedHomotopy out;
  out.eta.resize(n);
  out.eta_alt.resize(n);
  out.difference.resize(n);
  GradedMap a = compose(eta32, Phi21, 0), b = compose(Psi32, eta21, -1);
  GradedMap c = compose(eta32, Psi21, 0), e = compose(Phi32, eta21, -1);
  out.agree = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rows = i ? K3.dims[i - 1] : 0;
    Matrix x(rows, K1.dims[i]), y(rows, K1.dims[i]);
    if (i >= 1) {
      x = a[i] + b[i];
      y = c[i] + e[i];
    }
    out.eta[i] = x;
    out.eta_alt[i] = y;
    out.difference[i] = x - y;
    if (!out.difference[i].is_zero()) out.agree = false;
  }
  return out;
}

}  // namespace fatlab
