#include "fatlab/corext.hpp"

#include <array>
#include <set>
#include <tuple>

namespace fatlab {

void prepare(FiniteCoreExtension& E) {
  const std::size_t nF = E.F.arrows.size();
  if (E.down.num_objects() != E.F.num_objects() || E.right.num_objects() != E.F.num_objects())
    throw Error(ErrorKind::MalformedTable, "core extension: F, G_down and G_right need the same objects");
  if (E.pi.size() != nF || E.tau.size() != nF)
    throw Error(ErrorKind::MalformedTable, "core extension: maps out of F need one entry per arrow");
  if (E.act.size() != E.down.arrows.size() * nF)
    throw Error(ErrorKind::MalformedTable, "core extension: action table has the wrong size");
  for (std::size_t f = 0; f < nF; ++f) {
    if (E.pi[f] < 0 || E.pi[f] >= E.right.num_arrows() || E.tau[f] < 0 || E.tau[f] >= E.down.num_arrows())
      throw Error(ErrorKind::MalformedTable, "core extension: map value out of range at " + E.F.arrows[f].id);
  }
  if (E.section.empty()) {
    E.section.assign(E.right.arrows.size(), -1);
    for (int r = 0; r < E.right.num_arrows(); ++r) {
      if (E.right.is_unit(r)) {
        E.section[r] = E.F.unit[E.right.s(r)];
        continue;
      }
      for (int f = 0; f < static_cast<int>(nF); ++f)
        if (E.pi[f] == r) {
          E.section[r] = f;
          break;
        }
    }
  }
  if (E.section.size() != E.right.arrows.size())
    throw Error(ErrorKind::MalformedTable, "core extension: section needs one entry per arrow of G_right");
}

int FiniteCoreOps::act(int d, int h) const {
  int v = E->action(d, h);
  if (v < 0) throw Error(ErrorKind::NotComposable, "no action of " + E->down.arrows[d].id + " on " + E->F.arrows[h].id);
  return v;
}

namespace {

std::vector<int> kernel_at(const FiniteCoreExtension& E, int x) {
  std::vector<int> out;
  for (int f = 0; f < E.F.num_arrows(); ++f)
    if (E.F.s(f) == x && E.in_H(f)) out.push_back(f);
  return out;
}

// Surjectivity, base preservation and a total action on H; everything else
// assumes these.
Report basic_shape(const FiniteCoreExtension& E) {
  Report rep;
  for (int f = 0; f < E.F.num_arrows(); ++f) {
    ++rep.checked;
    const auto& a = E.F.arrows[f];
    if (E.right.s(E.pi[f]) != a.src || E.right.t(E.pi[f]) != a.tgt)
      rep.fail("F -> G_right is the identity on objects", a.id);
    if (E.down.s(E.tau[f]) != a.src || E.down.t(E.tau[f]) != a.tgt) rep.fail("F -> G_down is the identity on objects", a.id);
  }
  for (int r = 0; r < E.right.num_arrows(); ++r) {
    ++rep.checked;
    const int f = E.section[r];
    if (f < 0 || f >= E.F.num_arrows() || E.pi[f] != r) rep.fail("F -> G_right is surjective (section)", E.right.arrows[r].id);
  }
  for (int d = 0; d < E.down.num_arrows(); ++d)
    for (int h : kernel_at(E, E.down.s(d))) {
      ++rep.checked;
      if (E.action(d, h) < 0) rep.fail("the action is defined on all of H", E.down.arrows[d].id + " on " + E.F.arrows[h].id);
    }
  return rep;
}

std::tuple<int, int, int> key(const Square<FiniteCoreOps>& a) { return {a.g1, a.g2, a.g3}; }

std::vector<Square<FiniteCoreOps>> all_squares(const DoubleGroupoid<FiniteCoreOps>& D, const FiniteCoreExtension& E) {
  std::vector<Square<FiniteCoreOps>> out;
  for (int g2 = 0; g2 < E.down.num_arrows(); ++g2)
    for (int r = 0; r < E.right.num_arrows(); ++r) {
      if (E.right.s(r) != E.down.s(g2)) continue;
      for (int g1 = 0; g1 < E.F.num_arrows(); ++g1)
        if (E.F.s(g1) == E.down.t(g2)) out.push_back(D.normalize({g1, g2, E.section[r]}));
    }
  return out;
}

}  // namespace

Report validate_core_extension(const FiniteCoreExtension& E) {
  Report rep = basic_shape(E);
  if (!rep.ok()) return rep;
  FiniteCoreOps o{&E};
  for (int r = 0; r < E.right.num_arrows(); ++r) corext_checks::section(o, rep, r);
  for (int f = 0; f < E.F.num_arrows(); ++f)
    for (int g = 0; g < E.F.num_arrows(); ++g)
      if (E.F.composable(f, g)) corext_checks::functor(o, rep, f, g);
  for (int d2 = 0; d2 < E.down.num_arrows(); ++d2) {
    auto H = kernel_at(E, E.down.s(d2));
    for (int d1 = 0; d1 < E.down.num_arrows(); ++d1) {
      if (!E.down.composable(d1, d2)) continue;
      for (int h1 : H)
        for (int h2 : H) corext_checks::action(o, rep, d1, d2, h1, h2);
    }
  }
  for (int f = 0; f < E.F.num_arrows(); ++f)
    for (int h : kernel_at(E, E.F.s(f))) corext_checks::peiffer(o, rep, f, h);
  return rep;
}

std::size_t count_squares(const FiniteCoreExtension& E) {
  DoubleGroupoid<FiniteCoreOps> D(FiniteCoreOps{&E});
  return all_squares(D, E).size();
}

Report double_check(const FiniteCoreExtension& E) {
  if (!validate_core_extension(E).ok())
    throw Error(ErrorKind::StructureNotVerified, "the double groupoid needs a valid core extension");
  DoubleGroupoid<FiniteCoreOps> D(FiniteCoreOps{&E});
  auto S = all_squares(D, E);
  std::map<int, std::vector<std::size_t>> by_s_right, by_t_right, by_s_down, by_t_down;
  for (std::size_t i = 0; i < S.size(); ++i) {
    by_s_right[D.s_right(S[i])].push_back(i);
    by_t_right[D.t_right(S[i])].push_back(i);
    by_s_down[D.s_down(S[i])].push_back(i);
    by_t_down[D.t_down(S[i])].push_back(i);
  }
  Report rep;
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& a : S) {
    if (!seen.insert(key(a)).second) rep.fail("distinct representatives are distinct squares", D.show(a));
    for (int h : kernel_at(E, E.F.s(a.g3))) corext_checks::square(D, rep, a, h);
  }
  for (const auto& b : S) {
    for (std::size_t ia : by_s_right[D.t_right(b)]) {
      const auto& a = S[ia];
      for (std::size_t ie : by_t_right[D.s_right(b)]) corext_checks::h_assoc(D, rep, a, b, S[ie]);
      for (std::size_t id : by_t_down[D.s_down(b)]) {
        const auto& d = S[id];
        for (std::size_t ic : by_t_down[D.s_down(a)]) {
          const auto& c = S[ic];
          if (D.h_composable(c, d)) corext_checks::interchange(D, rep, a, b, c, d);
        }
      }
    }
    for (std::size_t ia : by_s_down[D.t_down(b)])
      for (std::size_t ie : by_t_down[D.s_down(b)]) corext_checks::v_assoc(D, rep, S[ia], b, S[ie]);
  }
  return rep;
}

Report core_recover_check(const FiniteCoreExtension& E) {
  if (!validate_core_extension(E).ok())
    throw Error(ErrorKind::StructureNotVerified, "core recovery needs a valid core extension");
  FiniteCoreOps o{&E};
  DoubleGroupoid<FiniteCoreOps> D(o);
  Report rep;
  // The core: squares with unit sources in both directions.
  std::map<std::tuple<int, int, int>, int> core_of;
  for (int f = 0; f < E.F.num_arrows(); ++f) {
    ++rep.checked;
    if (!core_of.emplace(key(D.core(f)), f).second) rep.fail("core squares are in bijection with F", E.F.arrows[f].id);
  }
  std::size_t cores = 0;
  for (const auto& a : all_squares(D, E)) {
    if (!E.down.is_unit(D.s_right(a)) || !E.right.is_unit(D.s_down(a))) continue;
    ++cores;
    ++rep.checked;
    if (!core_of.count(key(a))) rep.fail("every core square comes from F", D.show(a));
  }
  if (cores != core_of.size()) rep.fail("core squares are in bijection with F", std::to_string(cores) + " core squares");
  for (int g = 0; g < E.F.num_arrows(); ++g)
    for (int h = 0; h < E.F.num_arrows(); ++h) {
      if (!E.F.composable(g, h)) continue;
      for (int d = 0; d < E.down.num_arrows(); ++d)
        for (int h2 : kernel_at(E, E.down.s(d))) corext_checks::core(D, rep, g, h, d, h2);
    }
  return rep;
}

// Fat extension as a core extension.

GLFrame FatCoreOps::tau(const FatElement& a) const {
  auto phi = fat_rep(*ruth, a);
  const int t = ruth->G.t(a.g);
  return {t, ruth->G.s(a.g), ruth->d(t), phi.C, phi.V};
}

FatElement FatCoreOps::act(const GLFrame& d, const FatElement& h) const {
  if (h.g != ruth->G.unit[d.x]) throw Error(ErrorKind::NotComposable, "the action needs an element of H at the source");
  return make_fat(*ruth, ruth->G.unit[d.y], (1 + twist) * (d.C * h.h * inverse(d.V)));
}

std::string FatCoreOps::show_f(const FatElement& a) const {
  return "(" + ruth->G.arrows[a.g].id + ", h=" + to_string(a.h) + ")";
}

std::string FatCoreOps::show_d(const GLFrame& a) const {
  return "Phi(" + ruth->G.objects[a.y] + "<-" + ruth->G.objects[a.x] + ", C=" + to_string(a.C) + ", V=" + to_string(a.V) + ")";
}

int FatCoreOps::sample_object(Rng& rng) const { return static_cast<int>(rng.below(ruth->G.num_objects())); }

int FatCoreOps::sample_R_from(int x, Rng& rng) const {
  std::vector<int> out;
  for (int g = 0; g < ruth->G.num_arrows(); ++g)
    if (ruth->G.s(g) == x) out.push_back(g);
  return out[rng.below(out.size())];
}

GLFrame FatCoreOps::sample_D_to(int y, Rng& rng) const {
  std::vector<int> xs;
  for (int x = 0; x < ruth->G.num_objects(); ++x)
    if (ruth->c(x) == ruth->c(y) && ruth->v(x) == ruth->v(y) && forms[x].r == forms[y].r) xs.push_back(x);
  const int x = xs[rng.below(xs.size())];
  const std::size_t c = ruth->c(y), v = ruth->v(y), r = forms[y].r;
  // Automorphisms of [[1,0],[0,0]]: C' = [[P,0],[Q,S]], V' = [[P,X],[0,T]].
  Matrix P = rng.invertible(r);
  Matrix Cp(c, c), Vp(v, v);
  Cp.set_block(0, 0, P);
  Cp.set_block(r, 0, rng.matrix(c - r, r));
  Cp.set_block(r, r, rng.invertible(c - r));
  Vp.set_block(0, 0, P);
  Vp.set_block(0, r, rng.matrix(r, v - r));
  Vp.set_block(r, r, rng.invertible(v - r));
  return {y, x, ruth->d(y), forms[y].B * Cp * inverse(forms[x].B), inverse(forms[y].A) * Vp * forms[x].A};
}

FatCoreOps fat_core_ops(const Ruth& R) {
  auto rep = check_structure(R);
  if (!rep.ok()) throw Error(ErrorKind::StructureNotVerified, "fat core extension: " + rep.violations.front().property);
  if (!R.unital) throw Error(ErrorKind::NotUnital, "fat core extension needs a unital ruth");
  FatCoreOps o;
  o.ruth = &R;
  for (int g = 0; g < R.G.num_arrows(); ++g)
    o.sigma.push_back(R.G.is_unit(g) ? fat_unit(R, R.G.s(g)) : certify_fiber(R, g));
  for (int x = 0; x < R.G.num_objects(); ++x) o.forms.push_back(canonical_form(R.d(x)));
  return o;
}

// Examples.

namespace {

FiniteGroupoid s3() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
  std::vector<std::vector<int>> mul(6, std::vector<int>(6));
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      std::array<int, 3> pq{};
      for (int i = 0; i < 3; ++i) pq[i] = perms[p][perms[q][i]];
      for (int k = 0; k < 6; ++k)
        if (perms[k] == pq) mul[p][q] = k;
    }
  return group_groupoid(names, mul);
}

int sign(int p) { return (p >= 1 && p <= 3) ? 1 : 0; }

FiniteCoreExtension crossed(FiniteGroupoid F, FiniteGroupoid right, std::vector<int> pi) {
  FiniteCoreExtension E;
  E.F = F;
  E.down = F;
  E.right = std::move(right);
  E.pi = std::move(pi);
  for (int f = 0; f < F.num_arrows(); ++f) E.tau.push_back(f);
  E.act.assign(static_cast<std::size_t>(F.num_arrows()) * F.num_arrows(), -1);
  for (int d = 0; d < F.num_arrows(); ++d)
    for (int h = 0; h < F.num_arrows(); ++h)
      if (E.right.is_unit(E.pi[h])) E.act[static_cast<std::size_t>(d) * F.num_arrows() + h] = F.mul(F.mul(d, h), F.inv[d]);
  prepare(E);
  return E;
}

}  // namespace

std::vector<std::string> core_example_names() { return {"crossed-z3-s3", "inner-s3", "trivial-h-z2"}; }

FiniteCoreExtension build_core_example(const std::string& name) {
  if (name == "inner-s3") {
    FiniteGroupoid right = unit_groupoid(1);
    right.objects = {"pt"};
    return crossed(s3(), right, std::vector<int>(6, 0));
  }
  if (name == "crossed-z3-s3") {
    std::vector<int> pi;
    for (int p = 0; p < 6; ++p) pi.push_back(sign(p));
    return crossed(s3(), cyclic_groupoid(2), pi);
  }
  if (name == "trivial-h-z2") return crossed(cyclic_groupoid(2), cyclic_groupoid(2), {0, 1});
  throw Error(ErrorKind::BadParams, "unknown core extension '" + name + "'");
}

}  // namespace fatlab
