#pragma once

// 2-term ruths of a finite dimensional Lie algebra (a Lie algebroid over a
// point), the fat Lie algebra Hom(V,C) + g, and Chevalley-Eilenberg type
// cohomology.
//
// Conventions, with C_a = nablaC(a), V_a = nablaV(a) and
// nabla_a h = C_a h - h V_a on Hom(V,C):
//   [(h,a),(h',a')] = (R2(a,a') + nabla_a h' - nabla_a' h + h' d h - h d h', [a,a'])
//   rho(h,a)        = (C_a - h d, V_a - d h)
//   delta(w0, w1)   = (D w0 - R2 ^ w1, -d w0 - D w1)
// where D is the Chevalley-Eilenberg operator of the connection and
//   (R2 ^ w)(x_0..x_k) = sum_{i<j} (-1)^{i+j+1} R2(x_i,x_j) w(x_0..^i..^j..x_k).
// With these signs the lift of (w0, w1) to the fat algebra satisfies
// i_h W0 = h w1.

#include <functional>
#include <string>
#include <vector>

#include "fatlab/ratlin.hpp"
#include "fatlab/report.hpp"
#include "fatlab/rng.hpp"
#include "fatlab/twoterm.hpp"

namespace fatlab {

struct LieAlgebra {
  std::size_t n = 0;
  std::vector<Vector> c;  // c[i * n + j] = [e_i, e_j]

  const Vector& bracket_basis(std::size_t i, std::size_t j) const { return c[i * n + j]; }
};

LieAlgebra abelian_lie(std::size_t n);
LieAlgebra sl2();
Vector lie_bracket(const LieAlgebra& L, const Vector& x, const Vector& y);
Report lie_check(const LieAlgebra& L);  // antisymmetry and Jacobi on basis triples

struct LieRuth {
  LieAlgebra g;
  Matrix d;                   // v x c
  std::vector<Matrix> C, V;   // per basis element
  std::vector<Matrix> R2;     // per pair i * n + j, c x v

  std::size_t c() const { return d.cols(); }
  std::size_t v() const { return d.rows(); }
  Matrix nablaC(const Vector& x) const;
  Matrix nablaV(const Vector& x) const;
  Matrix r2(const Vector& x, const Vector& y) const;
  const Matrix& r2(std::size_t i, std::size_t j) const { return R2[i * g.n + j]; }
};

void check_shapes(const LieRuth& R);  // throws ShapeMismatch
// Antisymmetry of R2, d C = V d, the curvature equations and the covariant
// cocycle equation, on basis elements.
Report la_check(const LieRuth& R);

struct FatLieElement {
  Matrix h;  // c x v
  Vector a;
};
FatLieElement fat_bracket(const LieRuth& R, const FatLieElement& x, const FatLieElement& y);
ChainPair fat_lie_rep(const LieRuth& R, const FatLieElement& x);
// Basis: the matrix units of Hom(V,C) in row-major order, then the e_i.
std::size_t fat_dim(const LieRuth& R);
FatLieElement fat_basis(const LieRuth& R, std::size_t k);
FatLieElement fat_from_coords(const LieRuth& R, const Vector& x);
Vector fat_coords(const LieRuth& R, const FatLieElement& x);
LieAlgebra fat_lie_algebra(const LieRuth& R);
// Antisymmetry and the Jacobi identity on all basis triples.
Report fat_jacobi_check(const LieRuth& R);

// Alternating k-forms on a Lie algebra of dimension n with values in Q^m,
// stored on increasing index tuples in lexicographic order.
struct CEForm {
  int degree = 0;
  std::size_t n = 0, m = 0;
  std::vector<Vector> values;
};
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, int k);
std::size_t tuple_index(std::size_t n, const std::vector<std::size_t>& t);
CEForm ce_zero(std::size_t n, std::size_t m, int k);
Vector ce_eval(const CEForm& w, const std::vector<Vector>& args);
// Chevalley-Eilenberg operator for a (not necessarily flat) linear action.
CEForm ce_D(const LieAlgebra& L, const std::function<Matrix(std::size_t)>& action, const CEForm& w);

struct CEPair {
  int degree = 0;
  CEForm w0;  // k-form in C
  CEForm w1;  // (k-1)-form in V
};
CEPair ce_pair_zero(const LieRuth& R, int k);
std::size_t ce_pair_dim(const LieRuth& R, int k);
Vector ce_flatten(const CEPair& p);
CEPair ce_unflatten(const LieRuth& R, int k, const Vector& x);
CEPair ce_differential(const LieRuth& R, const CEPair& p);
Matrix ce_matrix(const LieRuth& R, int k);
// delta^2 = 0 as a matrix identity in degrees 0..max_degree-1.
Report ce_square_check(const LieRuth& R, int max_degree);
// Dimensions of H^0..H^max_degree. Throws StructureNotVerified when la_check fails.
std::vector<std::size_t> ce_cohomology(const LieRuth& R, int max_degree);

// The forms on the fat algebra determined by a pair:
//   W0(x_1..x_k) = w0(pi x) + sum_i (-1)^(i+1) h_i w1(pi x without x_i),  W1 = pi^* w1.
CEForm lift_w0(const LieRuth& R, const CEPair& p);
CEForm lift_w1(const LieRuth& R, const CEPair& p);
// i_h W0 = h W1 on all basis tuples of the fat algebra.
bool invariant_form_check(const LieRuth& R, const CEForm& W0, const CEForm& W1, const Matrix& h);
// The lift intertwines delta with the Chevalley-Eilenberg differential of
// the fat algebra acting on C through rho, on random pairs.
Report lift_check(const LieRuth& R, int max_degree, Rng& rng, int samples);

// R' with nabla'_i = rho(k_i, e_i) and R2' read off the fat bracket.
LieRuth resplit(const LieRuth& R, const std::vector<Matrix>& k);

std::vector<std::string> lie_example_names();
LieRuth build_lie_example(const std::string& name);

}  // namespace fatlab
