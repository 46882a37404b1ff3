#pragma once

// The general linear 2-groupoid GL(C,V)_G of a family of 2-term complexes and
// the general linear PB-groupoid F_G x| GL(C,V) of a fat extension.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fatlab/fat.hpp"

namespace fatlab {

// An element Psi_{y,x} of GL(C,V)_M: a pair of isomorphisms from the fibers at
// x to the fibers at y, carrying the differential d at y.
struct GLFrame {
  int y = 0, x = 0;
  Matrix d;     // v(y) x c(y)
  Matrix C, V;  // c(x) -> c(y), v(x) -> v(y)
};
bool operator==(const GLFrame& a, const GLFrame& b);

GLFrame gl_identity(const TwoTermComplex& cx, int x);
// Psi^V^-1 d Psi^C, the differential at x the frame is a chain iso for.
Matrix gl_source_d(const GLFrame& f);
GLFrame gl_inverse(const GLFrame& f);
// Psi_{z,y} Psi_{y,x}; needs gl_source_d(a) = b.d. Throws NotComposable.
GLFrame glM_product(const GLFrame& a, const GLFrame& b);

// (h_y, d_y, Psi_{y,x}) with 1 + d_y h invertible.
struct GL2Element {
  GLFrame frame;
  Matrix h;  // v(y) -> c(y)
};
bool operator==(const GL2Element& a, const GL2Element& b);
bool gl2_valid(const GL2Element& a);

// Vertical structure over GL(C,V)_M: source Psi, target ((1 + h d) Psi^C, (1 + d h) Psi^V).
GLFrame gl2_vsource(const GL2Element& a);
GLFrame gl2_vtarget(const GL2Element& a);
GL2Element glG_vertical(const GL2Element& a, const GL2Element& b);
GL2Element gl2_vunit(const GLFrame& f);
// Horizontal structure over Hom(C,V): source gl_source_d(frame), target d.
GL2Element glG_horizontal(const GL2Element& a, const GL2Element& b);
// The horizontal unit at the point d of Hom(C_x, V_x).
GL2Element gl2_hunit(int x, const Matrix& d);

struct GL2Matrices {
  Matrix pert;   // [[1 + h d, h], [0, 1]]
  Matrix frame;  // diag(Psi^C, Psi^V)
  Matrix combined() const { return pert * frame; }
};
GL2Matrices matrix_form(const GL2Element& a);
// Horizontal product computed on matrices: (P_a F_a P_b F_a^-1, F_a F_b).
GL2Matrices matrix_horizontal(const GL2Matrices& a, const GL2Matrices& b);

// Interchange of the vertical and horizontal products, the matrix form of
// the horizontal product and the units, on random quadruples.
Report gl_interchange_check(const TwoTermComplex& cx, Rng& rng, int samples);

GL2Element random_gl2(const TwoTermComplex& cx, int y, int x, const Matrix& d, Rng& rng);
GLFrame random_frame(const TwoTermComplex& cx, int y, int x, const Matrix& d, Rng& rng);

// Elements (H_g, Psi_{s g, x}) of F_G x| GL(C,V).
struct PBElement {
  FatElement H;
  GLFrame frame;
};
bool pb_equal(const PBElement& a, const PBElement& b);

struct PBGroupoid {
  Ruth R;
};

PBGroupoid pb_build(const Ruth& R);  // throws StructureNotVerified
GLFrame pb_source(const PBGroupoid& P, const PBElement& p);
GLFrame pb_target(const PBGroupoid& P, const PBElement& p);
Matrix pb_moment(const PBGroupoid& P, const PBElement& p);
PBElement pb_product(const PBGroupoid& P, const PBElement& a, const PBElement& b);
PBElement pb_unit(const PBGroupoid& P, const GLFrame& f);
PBElement pb_inverse(const PBGroupoid& P, const PBElement& p);
// Right 2-action (H, Psi) . (h, Psi') = (H . Psi^C h Psi^V^-1, Psi Psi').
PBElement pb_act(const PBGroupoid& P, const PBElement& p, const GL2Element& a);

struct ActionSolution {
  GL2Element a;
  bool unique = false;
};
// The element a with p . a = q, for p and q over the same arrow and base frame object.
std::optional<ActionSolution> pb_solve_action(const PBGroupoid& P, const PBElement& p, const PBElement& q);

PBElement pb_random(const PBGroupoid& P, int g, Rng& rng);
// (h_y, Psi_{y,x}) -> 1_{1_y} . (h_y, d, Psi_{y,x}).
PBElement pb_embed(const PBGroupoid& P, const Matrix& h, const GLFrame& f);
// The unit-framed representative of the GL(C,V)_M orbit of p.
PBElement pb_normalize(const PBGroupoid& P, const PBElement& p);
// Product of orbits, returned as a unit-framed representative.
PBElement pb_quotient_product(const PBGroupoid& P, const PBElement& a, const PBElement& b);

// Groupoid axioms, the action map as a groupoid map, and principality.
Report pb_check(const PBGroupoid& P, Rng& rng, int samples);
Report pb_ses_check(const PBGroupoid& P, Rng& rng, int samples);

// Reads the fat extension back from unit-framed representatives, one per
// arrow, using only PB-groupoid operations.
Ruth pb_to_fat(const PBGroupoid& P, const std::vector<FatElement>& lifts);
std::vector<FatElement> default_lifts(const Ruth& R);

// A cochain on the PB-groupoid: f0 on n elements, f1 on the last n - 1
// elements (at an object when n = 1).
struct PBCochain {
  int degree = 0;
  std::function<Vector(const std::vector<PBElement>&)> f0;
  std::function<Vector(const std::vector<PBElement>&, int object)> f1;
};
PBCochain pb_pullback(const PBGroupoid& P, const RuthCochain& f);
// Ignores the homotopy part of the first element; not equivariant in general.
PBCochain pb_naive_pullback(const PBGroupoid& P, const RuthCochain& f);
Report gl_equiv_check(const PBGroupoid& P, const PBCochain& f, const RuthCochain& original, Rng& rng, int samples);

}  // namespace fatlab
