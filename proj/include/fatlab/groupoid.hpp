#pragma once

// Finite groupoids given by tables, and their nerves.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fatlab/report.hpp"

namespace fatlab {

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
};

struct FiniteGroupoid {
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> unit;  // object -> arrow
  std::vector<int> inv;   // arrow -> arrow
  std::vector<int> comp;  // g * n + h -> gh, or -1 when s(g) != t(h)

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  int s(int g) const { return arrows[g].src; }
  int t(int g) const { return arrows[g].tgt; }
  bool composable(int g, int h) const { return s(g) == t(h); }
  int mul(int g, int h) const;  // throws NotComposable
  bool is_unit(int g) const { return unit[s(g)] == g; }

  // Allocates comp and fills it with -1.
  void reset_table();
  void set(int g, int h, int gh) { comp[static_cast<std::size_t>(g) * arrows.size() + h] = gh; }
  int table(int g, int h) const { return comp[static_cast<std::size_t>(g) * arrows.size() + h]; }

  int object_index(const std::string& id) const;
  int arrow_index(const std::string& id) const;
};

// Exhaustive check of units, inverses and associativity.
Report validate(const FiniteGroupoid& G);

FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid cyclic_groupoid(int k);
FiniteGroupoid unit_groupoid(int n);
// Z/k acting on n points, each point rotating inside its block of size gcd(k, n).
FiniteGroupoid action_groupoid(int k, int n);
// One-object groupoid from a group multiplication table; element 0 is the unit.
FiniteGroupoid group_groupoid(const std::vector<std::string>& names, const std::vector<std::vector<int>>& mul);

// Parses "pair(3)", "cyclic(2)", "unit(2)", "action(2,2)". Throws BadParams.
FiniteGroupoid build_example(const std::string& name);

struct NerveTuple {
  std::vector<int> arrows;  // g1 ... gn, composable left to right
  int object = -1;          // only meaningful in degree 0

  std::size_t degree() const { return arrows.size(); }
  friend bool operator==(const NerveTuple& a, const NerveTuple& b) {
    return a.arrows == b.arrows && a.object == b.object;
  }
};

std::vector<NerveTuple> nerve(const FiniteGroupoid& G, int n);

// x0 = t g1, x_k = s g_k.
int basepoint(const FiniteGroupoid& G, const NerveTuple& t, int k);
inline int target_object(const FiniteGroupoid& G, const NerveTuple& t) { return basepoint(G, t, 0); }
NerveTuple face(const FiniteGroupoid& G, const NerveTuple& t, int k);
NerveTuple degeneracy(const FiniteGroupoid& G, const NerveTuple& t, int k);

// Enumerated nerve in a fixed order with constant-time lookup.
class NerveIndex {
 public:
  NerveIndex(const FiniteGroupoid& G, int n);
  int degree() const { return n_; }
  std::size_t size() const { return tuples_.size(); }
  const NerveTuple& operator[](std::size_t i) const { return tuples_[i]; }
  const std::vector<NerveTuple>& tuples() const { return tuples_; }
  std::size_t index(const NerveTuple& t) const;

 private:
  std::uint64_t key(const NerveTuple& t) const;
  int n_;
  std::uint64_t radix_;
  std::vector<NerveTuple> tuples_;
  std::unordered_map<std::uint64_t, std::size_t> pos_;
};

// FATLAB_NERVE_CAP, default 3.
int nerve_cap();

std::string describe(const FiniteGroupoid& G, const NerveTuple& t);

}  // namespace fatlab
