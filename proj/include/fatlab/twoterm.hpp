#pragma once

// 2-term complexes C -> V over a finite object set, the groups H(V,C) of
// invertible homotopies, and related constructions on a single fiber.

#include <optional>
#include <vector>

#include "fatlab/ratlin.hpp"

namespace fatlab {

struct TwoTermComplex {
  std::vector<Matrix> d;  // d[x] : C_x -> V_x, shape v(x) x c(x)

  int objects() const { return static_cast<int>(d.size()); }
  std::size_t c(int x) const { return d[x].cols(); }
  std::size_t v(int x) const { return d[x].rows(); }
};

// A homotopy at one fiber is just a c x v matrix; the functions below take the
// fiber differential d explicitly.

struct Membership {
  bool member = false;
  Matrix inv_1_dh;  // (1 + d h)^-1 when member
};

Membership h_member(const Matrix& d, const Matrix& h);
Matrix h_product(const Matrix& d, const Matrix& h, const Matrix& h2);
Matrix h_inverse(const Matrix& d, const Matrix& h);
Matrix h_inverse_left(const Matrix& d, const Matrix& h);  // -(1 + h d)^-1 h
Matrix block_embed(const Matrix& d, const Matrix& h);
// The dual homotopy (h^-1)^T for the complex V* -> C* with differential d^T.
Matrix h_dualize(const Matrix& d, const Matrix& h);
Matrix hom_bracket(const Matrix& d, const Matrix& h, const Matrix& h2);

// Frames phi(h) = (1 + h d, 1 + d h), a chain automorphism of d.
struct ChainPair {
  Matrix C, V;
};
ChainPair h_frame(const Matrix& d, const Matrix& h);

struct PertElement {
  Matrix d, h;
  Matrix inv_1_dh;
};
PertElement make_pert(const Matrix& d, const Matrix& h);  // throws NotInvertibleInput
PertElement pert_product(const PertElement& a, const PertElement& b);

// Row and column reduction d = A^-1 [[I_r,0],[0,0]] B^-1.
struct CanonicalForm {
  Matrix A, B;  // A d B is canonical
  std::size_t r = 0;
};
CanonicalForm canonical_form(const Matrix& d);
bool is_canonical(const Matrix& d, std::size_t* r = nullptr);
// Transport h for d to the homotopy B^-1 h A^-1 for A d B.
Matrix transport_homotopy(const CanonicalForm& cf, const Matrix& h);

struct SemidirectParts {
  Matrix glr;         // 1 + h4, r x r
  Matrix h1, h2, h3;  // (k-r) x r, (k-r) x (l-r), r x (l-r)
};
SemidirectParts semidirect_decompose(const Matrix& d, const Matrix& h);
Matrix semidirect_reconstruct(const SemidirectParts& p);
// The 4x4 block matrix with rows C_r, C_{k-r}, V_r, V_{l-r}.
Matrix semidirect_matrix(const SemidirectParts& p);

// Paper criterion plus equal Euler characteristic; throws NotChainMap.
bool quasi_iso(const Matrix& d1, const Matrix& d2, const Matrix& phiC, const Matrix& phiV);
bool is_chain_map(const Matrix& d1, const Matrix& d2, const Matrix& phiC, const Matrix& phiV);

// Bounded complexes K^0 -> ... -> K^{N-1}; d[i] : K^i -> K^{i+1}.
struct GradedComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix> d;  // size N-1
};
using GradedMap = std::vector<Matrix>;  // per degree

// [d, eta] at every degree for a degree -1 map eta : K -> L.
GradedMap homotopy_commutator(const GradedComplex& K, const GradedComplex& L, const GradedMap& eta);

struct ComposedHomotopy {
  GradedMap eta;         // eta32 Phi21 + Psi32 eta21
  GradedMap eta_alt;     // eta32 Psi21 + Phi32 eta21
  GradedMap difference;  // eta - eta_alt = -[d, eta32 eta21]
  bool agree = false;
};

// Throws HypothesisViolated unless Phi, Psi are chain maps and Phi - Psi = [d, eta] on both legs.
ComposedHomotopy compose_homotopies(const GradedComplex& K1, const GradedComplex& K2, const GradedComplex& K3,
                                    const GradedMap& Phi21, const GradedMap& Psi21, const GradedMap& eta21,
                                    const GradedMap& Phi32, const GradedMap& Psi32, const GradedMap& eta32);

GradedComplex two_term(const Matrix& d);

}  // namespace fatlab
