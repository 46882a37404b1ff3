#pragma once

// The fat groupoid of a ruth in the split presentation: pairs (g, h) with
// R1V(g) + d h invertible, together with its representation, splittings,
// dual model, block matrices, invariant cochains, morphisms and the split
// VB-groupoid.

#include <functional>
#include <optional>
#include <vector>

#include "fatlab/rng.hpp"
#include "fatlab/ruth.hpp"

namespace fatlab {

struct FatElement {
  int g = 0;
  Matrix h;          // V_{s g} -> C_{t g}
  Matrix phiV_inv;   // (R1V(g) + d h)^-1
};

std::optional<FatElement> try_fat(const Ruth& R, int g, const Matrix& h);
FatElement make_fat(const Ruth& R, int g, const Matrix& h);  // throws NotInvertibleInput
FatElement fat_unit(const Ruth& R, int x);                   // throws NotUnital
// Deterministic member over g; throws FiberNotCertified when none is found.
FatElement certify_fiber(const Ruth& R, int g);
FatElement random_fat(const Ruth& R, int g, Rng& rng);

ChainPair fat_rep(const Ruth& R, const FatElement& H);  // (R1C + h d, R1V + d h)
FatElement fat_product(const Ruth& R, const FatElement& a, const FatElement& b);
FatElement fat_inverse(const Ruth& R, const FatElement& H);
// The other closed form, -phiC^-1 (R2(g, g^-1) + h R1V(g^-1)).
Matrix fat_inverse_alt(const Ruth& R, const FatElement& H);
bool fat_equal(const FatElement& a, const FatElement& b);

// k . H and H . k for k a homotopy at t g, respectively s g.
FatElement fat_act_left(const Ruth& R, const Matrix& k, const FatElement& H);
FatElement fat_act_right(const Ruth& R, const FatElement& H, const Matrix& k);
// H (1, k) H^-1 = (1, phiC k phiV^-1) with k at s g.
bool conjugation_check(const Ruth& R, const FatElement& H, const Matrix& k);
Matrix comparison(const FatElement& a, const FatElement& b);  // h_b - h_a

// A lift per arrow; R2 and R1 recovered from the fat products.
std::vector<Matrix> splitting_R2(const Ruth& R, const std::vector<FatElement>& lifts);
Ruth ruth_from_splitting(const Ruth& R, const std::vector<FatElement>& lifts);
std::vector<FatElement> zero_splitting(const Ruth& R);

// Flat case: H(V,C) x| G with (k1, g1)(k2, g2) = (k1 . (g1 . k2), g1 g2).
struct TrivialElement {
  int g = 0;
  Matrix k;  // homotopy at t g
};
TrivialElement trivialize(const Ruth& R, const FatElement& H);  // throws NotMultiplicative
FatElement untrivialize(const Ruth& R, const TrivialElement& e);
TrivialElement trivial_product(const Ruth& R, const TrivialElement& a, const TrivialElement& b);

// Dual model: A : C_tg -> C_sg, B : V_sg -> C_sg with A R1C(g) - B d = 1 and A h + B = T.
struct DualFatElement {
  int g = 0;
  Matrix A, B;
};
struct PairingSolution {
  DualFatElement omega;
  bool unique = false;
};
PairingSolution pairing_solve(const Ruth& R, const FatElement& H, const Matrix& target);
DualFatElement pairing_closed_form(const Ruth& R, const FatElement& H, const Matrix& target);
DualFatElement dual_product(const Ruth& R, const DualFatElement& a, const DualFatElement& b);
FatElement fat_from_dual(const Ruth& R, const DualFatElement& w);  // h = -A^-1 B

// Block matrices of fat elements of two ruths over the same groupoid and the
// same arrow. The diagonal entries need not be members on their own.
struct BlockFat {
  int g = 0;
  Matrix h11;  // V1_sg -> C1_tg
  Matrix h12;  // V2_sg -> C1_tg
  Matrix h21;  // V1_sg -> C2_tg
  Matrix h22;  // V2_sg -> C2_tg
};
BlockFat block_product(const Ruth& R1, const Ruth& R2, const BlockFat& a, const BlockFat& b);
// [[phiV1, d1 h12], [d2 h21, phiV2]]; a is a member iff this is invertible.
Matrix block_phiV(const Ruth& R1, const Ruth& R2, const BlockFat& a);
bool block_member(const Ruth& R1, const Ruth& R2, const BlockFat& a);
BlockFat block_unit(const Ruth& R1, const Ruth& R2, int x);
// The direct sum ruth, whose fat groupoid contains all block matrices.
Ruth direct_sum(const Ruth& R1, const Ruth& R2);

// Invariant cochains: values of the cochain on the fat groupoid at given lifts.
Vector invariant_eval(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts);
Vector invariant_f1(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts);
struct FatCochainValue {
  Vector c;  // delta at n+1 lifts
  Vector v;  // V part at the first n lifts
};
// The flat differential of the fat groupoid (representation phi) applied to
// the invariant cochain, evaluated at n+1 lifts.
FatCochainValue fat_delta_eval(const Ruth& R, const RuthCochain& f, const std::vector<FatElement>& lifts);

struct FatMorphism {
  std::vector<Matrix> PhiC, PhiV;  // per object
  std::vector<Matrix> mu;          // per arrow: V1_sg -> C2_tg
};
FatMorphism identity_morphism(const Ruth& R);
// mu_g + h2 PhiV - PhiC h1 for H1, H2 over the same arrow of R1's groupoid.
Matrix morphism_eval(const Ruth& R1, const FatMorphism& m, const FatElement& H1, const FatElement& H2);
Report morphism_check(const Ruth& R1, const Ruth& R2, const FatMorphism& m, Rng& rng, int samples);
FatMorphism morphism_compose(const Ruth& R1, const FatMorphism& m21, const FatMorphism& m32);

// Split VB-groupoid: fiber over g is C_tg + V_sg.
struct VBElement {
  int g = 0;
  Vector c;  // C_tg
  Vector v;  // V_sg
};
struct VBGroupoid {
  const FiniteGroupoid* G = nullptr;
  std::vector<std::size_t> c, v;  // fiber dims per object
  std::function<Vector(const VBElement&)> source, target;
  std::function<VBElement(const VBElement&, const VBElement&)> product;
  std::function<VBElement(const VBElement&)> inverse;
  std::function<VBElement(int, const Vector&)> unit;
};
VBGroupoid vb_structure(const Ruth& R);

// Fat elements of a VB-groupoid: linear sections v -> (h v, v) over g, stored
// as (c_tg + v_sg) x v_sg matrices.
struct VBSection {
  int g = 0;
  Matrix H;
};
VBSection vb_section(const VBGroupoid& vb, const FatElement& H);
VBSection vb_section_product(const VBGroupoid& vb, const VBSection& a, const VBSection& b);
// Reads (d, R1, R2) back from VB operations and the zero sections.
Ruth ruth_from_vb(const VBGroupoid& vb);

// (c, v) -> (PhiC c - mu v, PhiV v) over each arrow.
std::vector<Matrix> vb_map(const Ruth& R1, const Ruth& R2, const FatMorphism& m);
FatMorphism morphism_from_vb_map(const Ruth& R1, const Ruth& R2, const std::vector<Matrix>& F);
// F(a b) = F(a) F(b) and F commutes with source and target on basis elements.
Report vb_map_check(const Ruth& R1, const Ruth& R2, const std::vector<Matrix>& F);

bool ruth_equal(const Ruth& a, const Ruth& b);

}  // namespace fatlab
