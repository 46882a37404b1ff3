#include "fatlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fatlab {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::Parse, where + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

std::size_t dim(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a non-negative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

int object_of(const FiniteGroupoid& G, const std::string& id, const std::string& where) {
  int x = G.object_index(id);
  if (x < 0) bad(where, "unknown object '" + id + "'");
  return x;
}

int arrow_of(const FiniteGroupoid& G, const std::string& id, const std::string& where) {
  int g = G.arrow_index(id);
  if (g < 0) bad(where, "unknown arrow '" + id + "'");
  return g;
}

std::vector<std::string> split_bar(const std::string& s) {
  std::vector<std::string> out;
  std::size_t p = 0;
  while (true) {
    auto q = s.find('|', p);
    out.push_back(s.substr(p, q == std::string::npos ? std::string::npos : q - p));
    if (q == std::string::npos) break;
    p = q + 1;
  }
  return out;
}

std::string tuple_key(const FiniteGroupoid& G, const NerveTuple& t) {
  if (t.arrows.empty()) return G.objects[t.object];
  std::string k;
  for (std::size_t i = 0; i < t.arrows.size(); ++i) k += (i ? "|" : "") + G.arrows[t.arrows[i]].id;
  return k;
}

// Every key of j names something in `known`; every name in `known` appears when `all`.
void check_keys(const Json& j, const std::set<std::string>& known, bool all, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) bad(where, "unexpected key '" + it.key() + "'");
  if (all)
    for (const auto& k : known)
      if (!j.contains(k)) bad(where, "missing key '" + k + "'");
}

std::set<std::string> object_ids(const FiniteGroupoid& G) { return {G.objects.begin(), G.objects.end()}; }
std::set<std::string> arrow_ids(const FiniteGroupoid& G) {
  std::set<std::string> s;
  for (const auto& a : G.arrows) s.insert(a.id);
  return s;
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) bad(where, "expected a rational as \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a matrix (array of rows)");
  if (j.size() != rows)
    bad(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wi = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) bad(wi, "expected a row of length " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k], wi + "[" + std::to_string(k) + "]");
  }
  return m;
}

Json groupoid_to_json(const FiniteGroupoid& G) {
  Json j;
  j["objects"] = G.objects;
  Json arrows = Json::array();
  for (const auto& a : G.arrows) arrows.push_back({{"id", a.id}, {"src", G.objects[a.src]}, {"tgt", G.objects[a.tgt]}});
  j["arrows"] = arrows;
  Json units = Json::object(), inverse = Json::object(), compose = Json::array();
  for (int x = 0; x < G.num_objects(); ++x) units[G.objects[x]] = G.arrows[G.unit[x]].id;
  for (int g = 0; g < G.num_arrows(); ++g) inverse[G.arrows[g].id] = G.arrows[G.inv[g]].id;
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h)
      if (G.composable(g, h)) compose.push_back({G.arrows[g].id, G.arrows[h].id, G.arrows[G.table(g, h)].id});
  j["units"] = units;
  j["inverse"] = inverse;
  j["compose"] = compose;
  return j;
}

FiniteGroupoid groupoid_from_json(const Json& j, const std::string& where) {
  FiniteGroupoid G;
  const Json& objs = field(j, "objects", where);
  if (!objs.is_array()) bad(where + ".objects", "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string id = str(objs[i], where + ".objects[" + std::to_string(i) + "]");
    if (G.object_index(id) >= 0) bad(where + ".objects", "duplicate object '" + id + "'");
    G.objects.push_back(id);
  }
  const Json& arrows = field(j, "arrows", where);
  if (!arrows.is_array()) bad(where + ".arrows", "expected an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string w = where + ".arrows[" + std::to_string(i) + "]";
    Arrow a;
    a.id = str(field(arrows[i], "id", w), w + ".id");
    if (G.arrow_index(a.id) >= 0) bad(w, "duplicate arrow '" + a.id + "'");
    a.src = object_of(G, str(field(arrows[i], "src", w), w + ".src"), w + ".src");
    a.tgt = object_of(G, str(field(arrows[i], "tgt", w), w + ".tgt"), w + ".tgt");
    G.arrows.push_back(a);
  }
  const Json& units = field(j, "units", where);
  check_keys(units, object_ids(G), true, where + ".units");
  G.unit.assign(G.objects.size(), -1);
  for (int x = 0; x < G.num_objects(); ++x) {
    const std::string w = where + ".units." + G.objects[x];
    int u = arrow_of(G, str(units[G.objects[x]], w), w);
    if (G.s(u) != x || G.t(u) != x) bad(w, "the unit must be a loop at its object");
    G.unit[x] = u;
  }
  const Json& inverse = field(j, "inverse", where);
  check_keys(inverse, arrow_ids(G), true, where + ".inverse");
  G.inv.assign(G.arrows.size(), -1);
  for (int g = 0; g < G.num_arrows(); ++g) {
    const std::string w = where + ".inverse." + G.arrows[g].id;
    int gi = arrow_of(G, str(inverse[G.arrows[g].id], w), w);
    if (G.s(gi) != G.t(g) || G.t(gi) != G.s(g)) bad(w, "the inverse must reverse source and target");
    G.inv[g] = gi;
  }
  const Json& compose = field(j, "compose", where);
  if (!compose.is_array()) bad(where + ".compose", "expected an array");
  G.reset_table();
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const std::string w = where + ".compose[" + std::to_string(i) + "]";
    if (!compose[i].is_array() || compose[i].size() != 3) bad(w, "expected [g, h, gh]");
    int g = arrow_of(G, str(compose[i][0], w), w), h = arrow_of(G, str(compose[i][1], w), w),
        gh = arrow_of(G, str(compose[i][2], w), w);
    if (!G.composable(g, h)) bad(w, "s(" + G.arrows[g].id + ") != t(" + G.arrows[h].id + ")");
    if (G.table(g, h) >= 0) bad(w, "pair listed twice");
    if (G.s(gh) != G.s(h) || G.t(gh) != G.t(g)) bad(w, "product has the wrong source or target");
    G.set(g, h, gh);
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h)
      if (G.composable(g, h) && G.table(g, h) < 0)
        bad(where + ".compose", "missing composable pair [" + G.arrows[g].id + ", " + G.arrows[h].id + "]");
  return G;
}

Json complex_to_json(const FiniteGroupoid& G, const TwoTermComplex& cx) {
  Json C = Json::object(), V = Json::object(), P = Json::object();
  for (int x = 0; x < G.num_objects(); ++x) {
    C[G.objects[x]] = cx.c(x);
    V[G.objects[x]] = cx.v(x);
    P[G.objects[x]] = matrix_to_json(cx.d[x]);
  }
  return {{"C", C}, {"V", V}, {"partial", P}};
}

TwoTermComplex complex_from_json(const Json& j, const FiniteGroupoid& G, const std::string& where) {
  const Json &C = field(j, "C", where), &V = field(j, "V", where), &P = field(j, "partial", where);
  check_keys(C, object_ids(G), true, where + ".C");
  check_keys(V, object_ids(G), true, where + ".V");
  check_keys(P, object_ids(G), true, where + ".partial");
  TwoTermComplex cx;
  for (const auto& id : G.objects) {
    std::size_t c = dim(C[id], where + ".C." + id), v = dim(V[id], where + ".V." + id);
    cx.d.push_back(matrix_from_json(P[id], v, c, where + ".partial." + id));
  }
  return cx;
}

Json ruth_to_json(const Ruth& R) {
  const auto& G = R.G;
  Json j;
  j["kind"] = "ruth";
  j["groupoid"] = groupoid_to_json(G);
  j["complex"] = complex_to_json(G, R.cx);
  Json C = Json::object(), V = Json::object(), R2 = Json::object();
  for (int g = 0; g < G.num_arrows(); ++g) {
    C[G.arrows[g].id] = matrix_to_json(R.R1C[g]);
    V[G.arrows[g].id] = matrix_to_json(R.R1V[g]);
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h)
      if (G.composable(g, h) && !R.r2(g, h).is_zero())
        R2[G.arrows[g].id + "|" + G.arrows[h].id] = matrix_to_json(R.r2(g, h));
  j["R1C"] = C;
  j["R1V"] = V;
  j["R2"] = R2;
  j["unital"] = R.unital;
  return j;
}

Ruth ruth_from_json(const Json& j, const std::string& where) {
  FiniteGroupoid G = groupoid_from_json(field(j, "groupoid", where), where + ".groupoid");
  TwoTermComplex cx = complex_from_json(field(j, "complex", where), G, where + ".complex");
  Ruth R = empty_ruth(G, cx);
  const Json &C = field(j, "R1C", where), &V = field(j, "R1V", where);
  check_keys(C, arrow_ids(G), true, where + ".R1C");
  check_keys(V, arrow_ids(G), true, where + ".R1V");
  for (int g = 0; g < G.num_arrows(); ++g) {
    const auto& id = G.arrows[g].id;
    const int s = G.s(g), t = G.t(g);
    R.R1C[g] = matrix_from_json(C[id], cx.c(t), cx.c(s), where + ".R1C." + id);
    R.R1V[g] = matrix_from_json(V[id], cx.v(t), cx.v(s), where + ".R1V." + id);
  }
  if (j.contains("R2")) {
    const Json& R2 = j["R2"];
    if (!R2.is_object()) bad(where + ".R2", "expected an object");
    for (auto it = R2.begin(); it != R2.end(); ++it) {
      const std::string w = where + ".R2." + it.key();
      auto parts = split_bar(it.key());
      if (parts.size() != 2) bad(w, "expected a key \"g|h\"");
      int g = arrow_of(G, parts[0], w), h = arrow_of(G, parts[1], w);
      if (!G.composable(g, h)) bad(w, "pair is not composable");
      R.r2(g, h) = matrix_from_json(it.value(), cx.c(G.t(g)), cx.v(G.s(h)), w);
    }
  }
  if (j.contains("unital")) {
    if (!j["unital"].is_boolean()) bad(where + ".unital", "expected a boolean");
    R.unital = j["unital"].get<bool>();
  }
  return R;
}

Json cochain_to_json(const Ruth& R, const RuthCochain& f) {
  Json j;
  j["degree"] = f.degree;
  auto part = [&](const std::vector<Vector>& vals, int m) {
    Json out = Json::object();
    if (m < 0) return out;
    NerveIndex idx(R.G, m);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Json v = Json::array();
      for (const auto& q : vals[i]) v.push_back(rational_to_json(q));
      out[tuple_key(R.G, idx[i])] = v;
    }
    return out;
  };
  j["f0"] = part(f.f0, f.degree);
  j["f1"] = part(f.f1, f.degree - 1);
  return j;
}

RuthCochain cochain_from_json(const Ruth& R, const Json& j, const std::string& where) {
  const Json& deg = field(j, "degree", where);
  if (!deg.is_number_integer() || deg.get<int>() < 0) bad(where + ".degree", "expected a non-negative integer");
  CochainSpace sp(R, deg.get<int>());
  RuthCochain f = sp.zero();
  auto part = [&](const char* key, std::vector<Vector>& vals, int m, bool isV) {
    if (m < 0) return;
    const std::string w = where + "." + key;
    const Json& p = field(j, key, where);
    NerveIndex idx(R.G, m);
    std::set<std::string> keys;
    for (std::size_t i = 0; i < idx.size(); ++i) keys.insert(tuple_key(R.G, idx[i]));
    check_keys(p, keys, false, w);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto k = tuple_key(R.G, idx[i]);
      if (!p.contains(k)) continue;
      const int x = target_object(R.G, idx[i]);
      const std::size_t len = isV ? R.v(x) : R.c(x);
      const Json& v = p[k];
      if (!v.is_array() || v.size() != len) bad(w + "." + k, "expected a vector of length " + std::to_string(len));
      for (std::size_t e = 0; e < len; ++e) vals[i][e] = rational_from_json(v[e], w + "." + k);
    }
  };
  part("f0", f.f0, f.degree, false);
  part("f1", f.f1, f.degree - 1, true);
  return f;
}

Json morphism_to_json(const MorphismDoc& d) {
  const auto& G = d.source.G;
  Json j;
  j["kind"] = "morphism";
  j["source"] = ruth_to_json(d.source);
  j["target"] = ruth_to_json(d.target);
  Json C = Json::object(), V = Json::object(), mu = Json::object();
  for (int x = 0; x < G.num_objects(); ++x) {
    C[G.objects[x]] = matrix_to_json(d.m.PhiC[x]);
    V[G.objects[x]] = matrix_to_json(d.m.PhiV[x]);
  }
  for (int g = 0; g < G.num_arrows(); ++g) mu[G.arrows[g].id] = matrix_to_json(d.m.mu[g]);
  j["PhiC"] = C;
  j["PhiV"] = V;
  j["mu"] = mu;
  return j;
}

MorphismDoc morphism_from_json(const Json& j, const std::string& where) {
  MorphismDoc d{ruth_from_json(field(j, "source", where), where + ".source"),
                ruth_from_json(field(j, "target", where), where + ".target"),
                {}};
  const auto& G = d.source.G;
  if (groupoid_to_json(G) != groupoid_to_json(d.target.G)) bad(where, "source and target live over different groupoids");
  const Json &C = field(j, "PhiC", where), &V = field(j, "PhiV", where), &mu = field(j, "mu", where);
  check_keys(C, object_ids(G), true, where + ".PhiC");
  check_keys(V, object_ids(G), true, where + ".PhiV");
  check_keys(mu, arrow_ids(G), true, where + ".mu");
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto& id = G.objects[x];
    d.m.PhiC.push_back(matrix_from_json(C[id], d.target.c(x), d.source.c(x), where + ".PhiC." + id));
    d.m.PhiV.push_back(matrix_from_json(V[id], d.target.v(x), d.source.v(x), where + ".PhiV." + id));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const auto& id = G.arrows[g].id;
    d.m.mu.push_back(matrix_from_json(mu[id], d.target.c(G.t(g)), d.source.v(G.s(g)), where + ".mu." + id));
  }
  return d;
}

Json core_to_json(const FiniteCoreExtension& E) {
  Json j;
  j["kind"] = "core-extension";
  j["F"] = groupoid_to_json(E.F);
  j["down"] = groupoid_to_json(E.down);
  j["right"] = groupoid_to_json(E.right);
  Json toR = Json::object(), toD = Json::object(), sec = Json::object(), act = Json::object(), H = Json::object();
  for (int f = 0; f < E.F.num_arrows(); ++f) {
    toR[E.F.arrows[f].id] = E.right.arrows[E.pi[f]].id;
    toD[E.F.arrows[f].id] = E.down.arrows[E.tau[f]].id;
  }
  for (int r = 0; r < E.right.num_arrows(); ++r) sec[E.right.arrows[r].id] = E.F.arrows[E.section[r]].id;
  for (int d = 0; d < E.down.num_arrows(); ++d) {
    Json row = Json::object();
    for (int h = 0; h < E.F.num_arrows(); ++h)
      if (E.action(d, h) >= 0) row[E.F.arrows[h].id] = E.F.arrows[E.action(d, h)].id;
    act[E.down.arrows[d].id] = row;
  }
  for (int x = 0; x < E.F.num_objects(); ++x) {
    Json ids = Json::array();
    for (int f = 0; f < E.F.num_arrows(); ++f)
      if (E.F.s(f) == x && E.in_H(f)) ids.push_back(E.F.arrows[f].id);
    H[E.F.objects[x]] = ids;
  }
  j["toRight"] = toR;
  j["toDown"] = toD;
  j["section"] = sec;
  j["action"] = act;
  j["H"] = H;
  return j;
}

CoreDoc core_from_json(const Json& j, const std::string& where) {
  CoreDoc doc;
  auto& E = doc.E;
  E.F = groupoid_from_json(field(j, "F", where), where + ".F");
  E.down = groupoid_from_json(field(j, "down", where), where + ".down");
  E.right = groupoid_from_json(field(j, "right", where), where + ".right");
  if (E.down.objects != E.F.objects || E.right.objects != E.F.objects)
    bad(where, "F, down and right must list the same objects in the same order");
  const Json &toR = field(j, "toRight", where), &toD = field(j, "toDown", where);
  check_keys(toR, arrow_ids(E.F), true, where + ".toRight");
  check_keys(toD, arrow_ids(E.F), true, where + ".toDown");
  for (const auto& a : E.F.arrows) {
    E.pi.push_back(arrow_of(E.right, str(toR[a.id], where + ".toRight." + a.id), where + ".toRight." + a.id));
    E.tau.push_back(arrow_of(E.down, str(toD[a.id], where + ".toDown." + a.id), where + ".toDown." + a.id));
  }
  if (j.contains("section")) {
    const Json& sec = j["section"];
    check_keys(sec, arrow_ids(E.right), true, where + ".section");
    for (const auto& a : E.right.arrows)
      E.section.push_back(arrow_of(E.F, str(sec[a.id], where + ".section." + a.id), where + ".section." + a.id));
  }
  E.act.assign(E.down.arrows.size() * E.F.arrows.size(), -1);
  const Json& act = field(j, "action", where);
  check_keys(act, arrow_ids(E.down), false, where + ".action");
  for (auto it = act.begin(); it != act.end(); ++it) {
    const int d = arrow_of(E.down, it.key(), where + ".action");
    const std::string w = where + ".action." + it.key();
    if (!it.value().is_object()) bad(w, "expected an object");
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      const int h = arrow_of(E.F, jt.key(), w);
      E.act[static_cast<std::size_t>(d) * E.F.arrows.size() + h] = arrow_of(E.F, str(jt.value(), w + "." + jt.key()), w);
    }
  }
  if (j.contains("H")) {
    const Json& H = j["H"];
    check_keys(H, object_ids(E.F), true, where + ".H");
    std::vector<std::vector<int>> lists;
    for (const auto& id : E.F.objects) {
      const std::string w = where + ".H." + id;
      if (!H[id].is_array()) bad(w, "expected an array of arrows");
      std::vector<int> l;
      for (const auto& a : H[id]) l.push_back(arrow_of(E.F, str(a, w), w));
      lists.push_back(l);
    }
    doc.H = lists;
  }
  try {
    prepare(E);
  } catch (const Error& e) {
    bad(where, e.what());
  }
  return doc;
}

Json lie_to_json(const LieAlgebra& L) {
  Json c = Json::array();
  for (std::size_t i = 0; i < L.n; ++i)
    for (std::size_t j = 0; j < L.n; ++j)
      for (std::size_t k = 0; k < L.n; ++k)
        if (L.bracket_basis(i, j)[k] != 0) c.push_back({i, j, k, rational_to_json(L.bracket_basis(i, j)[k])});
  return {{"dim", L.n}, {"c", c}};
}

LieAlgebra lie_from_json(const Json& j, const std::string& where) {
  LieAlgebra L;
  L.n = dim(field(j, "dim", where), where + ".dim");
  L.c.assign(L.n * L.n, Vector(L.n));
  const Json& c = field(j, "c", where);
  if (!c.is_array()) bad(where + ".c", "expected an array");
  for (std::size_t e = 0; e < c.size(); ++e) {
    const std::string w = where + ".c[" + std::to_string(e) + "]";
    if (!c[e].is_array() || c[e].size() != 4) bad(w, "expected [i, j, k, coefficient]");
    std::size_t i = dim(c[e][0], w), jj = dim(c[e][1], w), k = dim(c[e][2], w);
    if (i >= L.n || jj >= L.n || k >= L.n) bad(w, "index out of range");
    L.c[i * L.n + jj][k] += rational_from_json(c[e][3], w);
  }
  return L;
}

Json lie_ruth_to_json(const LieRuth& R) {
  Json j;
  j["kind"] = "lie-ruth";
  j["lie"] = lie_to_json(R.g);
  j["C"] = R.c();
  j["V"] = R.v();
  j["d"] = matrix_to_json(R.d);
  Json C = Json::array(), V = Json::array(), R2 = Json::array();
  for (std::size_t i = 0; i < R.g.n; ++i) {
    C.push_back(matrix_to_json(R.C[i]));
    V.push_back(matrix_to_json(R.V[i]));
  }
  for (std::size_t i = 0; i < R.g.n; ++i)
    for (std::size_t k = 0; k < R.g.n; ++k)
      if (!R.r2(i, k).is_zero()) R2.push_back({i, k, matrix_to_json(R.r2(i, k))});
  j["nablaC"] = C;
  j["nablaV"] = V;
  j["R2"] = R2;
  return j;
}

LieRuth lie_ruth_from_json(const Json& j, const std::string& where) {
  LieRuth R;
  R.g = lie_from_json(field(j, "lie", where), where + ".lie");
  const std::size_t c = dim(field(j, "C", where), where + ".C"), v = dim(field(j, "V", where), where + ".V");
  R.d = matrix_from_json(field(j, "d", where), v, c, where + ".d");
  const Json &C = field(j, "nablaC", where), &V = field(j, "nablaV", where);
  if (!C.is_array() || C.size() != R.g.n) bad(where + ".nablaC", "expected one matrix per basis element");
  if (!V.is_array() || V.size() != R.g.n) bad(where + ".nablaV", "expected one matrix per basis element");
  for (std::size_t i = 0; i < R.g.n; ++i) {
    R.C.push_back(matrix_from_json(C[i], c, c, where + ".nablaC[" + std::to_string(i) + "]"));
    R.V.push_back(matrix_from_json(V[i], v, v, where + ".nablaV[" + std::to_string(i) + "]"));
  }
  R.R2.assign(R.g.n * R.g.n, Matrix(c, v));
  if (j.contains("R2")) {
    const Json& R2 = j["R2"];
    if (!R2.is_array()) bad(where + ".R2", "expected an array");
    for (std::size_t e = 0; e < R2.size(); ++e) {
      const std::string w = where + ".R2[" + std::to_string(e) + "]";
      if (!R2[e].is_array() || R2[e].size() != 3) bad(w, "expected [i, j, matrix]");
      std::size_t i = dim(R2[e][0], w), k = dim(R2[e][1], w);
      if (i >= R.g.n || k >= R.g.n) bad(w, "index out of range");
      R.R2[i * R.g.n + k] = matrix_from_json(R2[e][2], c, v, w);
    }
  }
  return R;
}

const char* doc_kind_name(DocKind k) {
  switch (k) {
    case DocKind::Groupoid: return "groupoid";
    case DocKind::Ruth: return "ruth";
    case DocKind::Morphism: return "morphism";
    case DocKind::CoreExtension: return "core-extension";
    case DocKind::LieRuth: return "lie-ruth";
  }
  return "?";
}

Document parse_document(const std::string& text, const std::string& where) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(where, std::string("malformed JSON: ") + e.what());
  }
  Document doc;
  doc.text = text;
  std::string kind = "groupoid";
  if (j.is_object() && j.contains("kind")) kind = str(j["kind"], where + ".kind");
  try {
    if (kind == "groupoid") {
      doc.kind = DocKind::Groupoid;
      doc.groupoid = groupoid_from_json(j, where);
    } else if (kind == "ruth") {
      doc.kind = DocKind::Ruth;
      doc.ruth = ruth_from_json(j, where);
      doc.groupoid = doc.ruth->G;
    } else if (kind == "morphism") {
      doc.kind = DocKind::Morphism;
      doc.morphism = morphism_from_json(j, where);
      doc.groupoid = doc.morphism->source.G;
    } else if (kind == "core-extension") {
      doc.kind = DocKind::CoreExtension;
      doc.core = core_from_json(j, where);
      doc.groupoid = doc.core->E.F;
    } else if (kind == "lie-ruth") {
      doc.kind = DocKind::LieRuth;
      doc.lie = lie_ruth_from_json(j, where);
    } else {
      bad(where + ".kind", "unknown kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    bad(where, e.what());
  }
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fatlab
