#pragma once

// Split 2-term representations up to homotopy of a finite groupoid, their
// cochain complexes, and the deformation dgLa.

#include <map>
#include <string>
#include <vector>

#include "fatlab/groupoid.hpp"
#include "fatlab/ratlin.hpp"
#include "fatlab/report.hpp"
#include "fatlab/twoterm.hpp"

namespace fatlab {

struct Ruth {
  FiniteGroupoid G;
  TwoTermComplex cx;
  std::vector<Matrix> R1C, R1V;  // per arrow g: fiber at s g -> fiber at t g
  std::vector<Matrix> R2;        // per pair g*n+h: V_{s h} -> C_{t g}; 0x0 when not composable
  bool unital = true;

  std::size_t c(int x) const { return cx.c(x); }
  std::size_t v(int x) const { return cx.v(x); }
  const Matrix& d(int x) const { return cx.d[x]; }
  const Matrix& r2(int g, int h) const { return R2[static_cast<std::size_t>(g) * G.arrows.size() + h]; }
  Matrix& r2(int g, int h) { return R2[static_cast<std::size_t>(g) * G.arrows.size() + h]; }
};

// Zero R1, R2 of the right shapes over G.
Ruth empty_ruth(const FiniteGroupoid& G, const TwoTermComplex& cx);

// Throws ShapeMismatch naming the first offending entry.
void check_shapes(const Ruth& R);

// The four structure equations, exhaustively. Unitality is reported by check_unital.
Report check_structure(const Ruth& R);
Report check_unital(const Ruth& R);
bool is_flat(const Ruth& R);

struct RuthCochain {
  int degree = 0;
  std::vector<Vector> f0;  // over G^(n), values in C at t g1
  std::vector<Vector> f1;  // over G^(n-1), values in V at t g1; empty when n = 0
};

// Flat coordinates: f0 entries tuple by tuple, then f1 entries.
class CochainSpace {
 public:
  CochainSpace(const Ruth& R, int degree);
  int degree() const { return n_; }
  std::size_t dim() const { return dim_; }
  const NerveIndex& nerve0() const { return n0_; }
  const NerveIndex& nerve1() const { return n1_; }
  RuthCochain zero() const;
  RuthCochain unflatten(const Vector& x) const;
  Vector flatten(const RuthCochain& f) const;
  RuthCochain basis(std::size_t i) const;

 private:
  const Ruth* R_;
  int n_;
  NerveIndex n0_, n1_;
  std::vector<std::size_t> off0_, off1_;
  std::size_t dim_ = 0;
};

// Total degree n -> n+1.
RuthCochain differential(const Ruth& R, const RuthCochain& f);
// Total degree n -> n-1.
RuthCochain nu(const Ruth& R, const RuthCochain& f);
RuthCochain contraction_eta(const Ruth& R, const RuthCochain& f);

// nu f = 0 and f vanishes on constant unit tuples, for components of degree >= 1.
bool normalized_check(const Ruth& R, const RuthCochain& f);

// Basis of the normalized cochains of total degree n, in flat coordinates.
std::vector<Vector> normalized_basis(const Ruth& R, int n);
// delta maps normalized cochains to normalized cochains, degrees 0..max_degree.
Report normalization_check(const Ruth& R, int max_degree);
// [delta, eta] = 1 as a matrix identity in degree n (n >= 2).
Report contraction_check(const Ruth& R, int n);

enum class RuthOp { Delta, Nu, Eta };

// Matrix of delta (n -> n+1), nu or eta (n -> n-1) in flat coordinates.
Matrix operator_matrix(const Ruth& R, int n, RuthOp op);
inline Matrix differential_matrix(const Ruth& R, int n) { return operator_matrix(R, n, RuthOp::Delta); }

// dim H^0 .. H^max_degree; throws NerveCapExceeded when max_degree > nerve_cap()
// and StructureNotVerified when the structure equations fail.
std::vector<std::size_t> cohomology_dims(const Ruth& R, int max_degree);

// End(C+V)-valued cochains of a single bidegree (ell arrows, internal degree -1, 0, +1).
// The value at (g1..g_ell) maps the fiber at s g_ell into the fiber at t g1.
struct DglaComponent {
  int ell = 0;
  int internal = 0;
  std::vector<Matrix> values;  // indexed by NerveIndex(G, ell)
  int total() const { return ell + internal; }
};

struct DglaElement {
  std::vector<DglaComponent> parts;
};

DglaElement dgla_of(const Ruth& R);  // d + R1 + R2
DglaElement dgla_product(const Ruth& R, const DglaElement& a, const DglaElement& b);
DglaElement dgla_bracket(const Ruth& R, const DglaElement& a, const DglaElement& b);
DglaElement dgla_differential(const Ruth& R, const DglaElement& a);
DglaElement dgla_add(const DglaElement& a, const DglaElement& b, const Rational& sb = 1);
// delta R + 1/2 [R, R], collected by bidegree.
DglaElement mc_residual(const Ruth& R);
bool dgla_is_zero(const DglaElement& a);
// First nonzero entry as text, or empty when zero.
std::string dgla_witness(const Ruth& R, const DglaElement& a);

// Block layout helpers for End(C+V) at a pair of objects.
Matrix block_CV(const Ruth& R, int tgt, int src, const Matrix& cc, const Matrix& cv, const Matrix& vc,
                const Matrix& vv);

}  // namespace fatlab
