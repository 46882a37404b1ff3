#include "fatlab/groupoid.hpp"

#include <cstdlib>
#include <numeric>
#include <regex>

#include "fatlab/error.hpp"

namespace fatlab {

int FiniteGroupoid::mul(int g, int h) const {
  if (!composable(g, h)) throw Error(ErrorKind::NotComposable, arrows[g].id + " * " + arrows[h].id);
  int gh = table(g, h);
  if (gh < 0) throw Error(ErrorKind::MalformedTable, "missing product " + arrows[g].id + " * " + arrows[h].id);
  return gh;
}

void FiniteGroupoid::reset_table() { comp.assign(arrows.size() * arrows.size(), -1); }

int FiniteGroupoid::object_index(const std::string& id) const {
  for (int i = 0; i < num_objects(); ++i)
    if (objects[i] == id) return i;
  return -1;
}

int FiniteGroupoid::arrow_index(const std::string& id) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].id == id) return i;
  return -1;
}

Report validate(const FiniteGroupoid& G) {
  Report r;
  const int n = G.num_arrows(), m = G.num_objects();
  auto name = [&](int g) { return G.arrows[g].id; };
  if (static_cast<int>(G.unit.size()) != m || static_cast<int>(G.inv.size()) != n ||
      G.comp.size() != static_cast<std::size_t>(n) * n) {
    r.fail("tables have the right sizes", "unit/inverse/compose table size");
    return r;
  }
  for (int g = 0; g < n; ++g) {
    if (G.s(g) < 0 || G.s(g) >= m || G.t(g) < 0 || G.t(g) >= m) {
      r.fail("arrow endpoints are objects", name(g));
      return r;
    }
  }
  for (int x = 0; x < m; ++x) {
    int u = G.unit[x];
    if (u < 0 || u >= n || G.s(u) != x || G.t(u) != x) {
      r.fail("unit of x is a loop at x", G.objects[x]);
      return r;
    }
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int gh = G.table(g, h);
      if (G.composable(g, h)) {
        ++r.checked;
        if (gh < 0 || gh >= n) r.fail("composable pairs have a product", name(g) + "," + name(h));
        else if (G.s(gh) != G.s(h) || G.t(gh) != G.t(g))
          r.fail("s(gh)=s(h) and t(gh)=t(g)", name(g) + "," + name(h) + "->" + name(gh));
      } else if (gh >= 0) {
        r.fail("non-composable pairs have no product", name(g) + "," + name(h));
      }
    }
  if (!r.ok()) return r;
  for (int g = 0; g < n; ++g) {
    if (G.table(G.unit[G.t(g)], g) != g || G.table(g, G.unit[G.s(g)]) != g)
      r.fail("1_t(g) g = g = g 1_s(g)", name(g));
    int gi = G.inv[g];
    if (gi < 0 || gi >= n || G.s(gi) != G.t(g) || G.t(gi) != G.s(g)) {
      r.fail("inverse reverses endpoints", name(g));
      continue;
    }
    if (G.table(g, gi) != G.unit[G.t(g)] || G.table(gi, g) != G.unit[G.s(g)])
      r.fail("g g^-1 and g^-1 g are units", name(g) + " inverse " + name(gi));
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (!G.composable(g, h)) continue;
      for (int k = 0; k < n; ++k) {
        if (!G.composable(h, k)) continue;
        ++r.checked;
        if (G.table(G.table(g, h), k) != G.table(g, G.table(h, k)))
          r.fail("(gh)k = g(hk)", name(g) + "," + name(h) + "," + name(k));
      }
    }
  return r;
}

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "pair(n) needs n >= 1");
  FiniteGroupoid G;
  for (int i = 0; i < n; ++i) G.objects.push_back("x" + std::to_string(i));
  auto id = [n](int t, int s) { return t * n + s; };
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) G.arrows.push_back({"g" + std::to_string(t) + std::to_string(s), s, t});
  for (int x = 0; x < n; ++x) G.unit.push_back(id(x, x));
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) G.inv.push_back(id(s, t));
  G.reset_table();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) G.set(id(a, b), id(b, c), id(a, c));
  return G;
}

FiniteGroupoid group_groupoid(const std::vector<std::string>& names, const std::vector<std::vector<int>>& mul) {
  const int k = static_cast<int>(names.size());
  FiniteGroupoid G;
  G.objects = {"pt"};
  for (int i = 0; i < k; ++i) G.arrows.push_back({names[i], 0, 0});
  G.unit = {0};
  G.inv.assign(k, -1);
  G.reset_table();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      G.set(i, j, mul[i][j]);
      if (mul[i][j] == 0) G.inv[i] = j;
    }
  return G;
}

FiniteGroupoid cyclic_groupoid(int k) {
  if (k < 1) throw Error(ErrorKind::BadParams, "cyclic(k) needs k >= 1");
  std::vector<std::string> names;
  std::vector<std::vector<int>> mul(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i) {
    names.push_back("r" + std::to_string(i));
    for (int j = 0; j < k; ++j) mul[i][j] = (i + j) % k;
  }
  return group_groupoid(names, mul);
}

FiniteGroupoid unit_groupoid(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "unit(n) needs n >= 1");
  FiniteGroupoid G;
  for (int i = 0; i < n; ++i) {
    G.objects.push_back("x" + std::to_string(i));
    G.arrows.push_back({"1x" + std::to_string(i), i, i});
    G.unit.push_back(i);
    G.inv.push_back(i);
  }
  G.reset_table();
  for (int i = 0; i < n; ++i) G.set(i, i, i);
  return G;
}

FiniteGroupoid action_groupoid(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorKind::BadParams, "action(k,n) needs k, n >= 1");
  const int d = std::gcd(k, n);
  auto act = [d](int j, int x) { return (x / d) * d + (x % d + j) % d; };
  FiniteGroupoid G;
  for (int x = 0; x < n; ++x) G.objects.push_back("x" + std::to_string(x));
  auto id = [n](int j, int x) { return j * n + x; };
  for (int j = 0; j < k; ++j)
    for (int x = 0; x < n; ++x)
      G.arrows.push_back({"a" + std::to_string(j) + "_" + std::to_string(x), x, act(j, x)});
  for (int x = 0; x < n; ++x) G.unit.push_back(id(0, x));
  for (int j = 0; j < k; ++j)
    for (int x = 0; x < n; ++x) G.inv.push_back(id((k - j) % k, act(j, x)));
  G.reset_table();
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i)
      for (int x = 0; x < n; ++x) G.set(id(j, act(i, x)), id(i, x), id((i + j) % k, x));
  return G;
}

FiniteGroupoid build_example(const std::string& name) {
  static const std::regex one(R"((pair|cyclic|unit)\((\d{1,3})\))");
  static const std::regex two(R"(action\((\d{1,3}),(\d{1,3})\))");
  std::smatch m;
  if (std::regex_match(name, m, one)) {
    int n = std::stoi(m[2]);
    if (m[1] == "pair") return pair_groupoid(n);
    if (m[1] == "cyclic") return cyclic_groupoid(n);
    return unit_groupoid(n);
  }
  if (std::regex_match(name, m, two)) return action_groupoid(std::stoi(m[1]), std::stoi(m[2]));
  throw Error(ErrorKind::BadParams, "unknown groupoid '" + name + "'");
}

std::vector<NerveTuple> nerve(const FiniteGroupoid& G, int n) {
  std::vector<NerveTuple> out;
  if (n < 0) return out;
  if (n == 0) {
    for (int x = 0; x < G.num_objects(); ++x) out.push_back({{}, x});
    return out;
  }
  std::vector<int> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back({cur, -1});
      return;
    }
    for (int g = 0; g < G.num_arrows(); ++g) {
      if (!cur.empty() && !G.composable(cur.back(), g)) continue;
      cur.push_back(g);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

int basepoint(const FiniteGroupoid& G, const NerveTuple& t, int k) {
  if (t.arrows.empty()) return t.object;
  return k == 0 ? G.t(t.arrows[0]) : G.s(t.arrows[k - 1]);
}

NerveTuple face(const FiniteGroupoid& G, const NerveTuple& t, int k) {
  const int n = static_cast<int>(t.degree());
  if (n == 0 || k < 0 || k > n) throw Error(ErrorKind::BadParams, "face index");
  NerveTuple r;
  if (n == 1) {
    r.object = k == 0 ? G.s(t.arrows[0]) : G.t(t.arrows[0]);
    return r;
  }
  if (k == 0) {
    r.arrows.assign(t.arrows.begin() + 1, t.arrows.end());
  } else if (k == n) {
    r.arrows.assign(t.arrows.begin(), t.arrows.end() - 1);
  } else {
    r.arrows = t.arrows;
    r.arrows[k - 1] = G.mul(t.arrows[k - 1], t.arrows[k]);
    r.arrows.erase(r.arrows.begin() + k);
  }
  return r;
}

NerveTuple degeneracy(const FiniteGroupoid& G, const NerveTuple& t, int k) {
  const int n = static_cast<int>(t.degree());
  if (k < 0 || k > n) throw Error(ErrorKind::BadParams, "degeneracy index");
  NerveTuple r;
  r.arrows = t.arrows;
  r.arrows.insert(r.arrows.begin() + k, G.unit[basepoint(G, t, k)]);
  return r;
}

NerveIndex::NerveIndex(const FiniteGroupoid& G, int n)
    : n_(n), radix_(static_cast<std::uint64_t>(std::max(G.num_arrows(), G.num_objects())) + 1),
      tuples_(nerve(G, n)) {
  for (std::size_t i = 0; i < tuples_.size(); ++i) pos_.emplace(key(tuples_[i]), i);
}

std::uint64_t NerveIndex::key(const NerveTuple& t) const {
  if (t.arrows.empty()) return static_cast<std::uint64_t>(t.object);
  std::uint64_t k = 0;
  for (int g : t.arrows) k = k * radix_ + static_cast<std::uint64_t>(g);
  return k;
}

std::size_t NerveIndex::index(const NerveTuple& t) const {
  if (static_cast<int>(t.degree()) != n_) throw Error(ErrorKind::DegreeMismatch, "nerve lookup");
  auto it = pos_.find(key(t));
  if (it == pos_.end()) throw Error(ErrorKind::NotComposable, "tuple not in nerve");
  return it->second;
}

int nerve_cap() {
  if (const char* e = std::getenv("FATLAB_NERVE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v >= 0 && v <= 16) return static_cast<int>(v);
    throw Error(ErrorKind::BadParams, std::string("FATLAB_NERVE_CAP='") + e + "'");
  }
  return 3;
}

std::string describe(const FiniteGroupoid& G, const NerveTuple& t) {
  if (t.arrows.empty()) return "(" + G.objects[t.object] + ")";
  std::string s = "(";
  for (std::size_t i = 0; i < t.arrows.size(); ++i) s += (i ? "," : "") + G.arrows[t.arrows[i]].id;
  return s + ")";
}

}  // namespace fatlab
