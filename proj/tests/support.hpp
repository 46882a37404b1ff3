#pragma once

// Shared helpers for the test binaries.

#include <string>
#include <vector>

#include "fatlab/fixtures.hpp"
#include "fatlab/io.hpp"

namespace fatlab::testing {

inline std::string fixture(const std::string& name) { return std::string(FATLAB_FIXTURE_DIR) + "/" + name + ".json"; }

inline Ruth load_ruth(const std::string& name) {
  auto doc = load_document(fixture(name));
  if (!doc.ruth) throw Error(ErrorKind::BadParams, name + " is not a ruth");
  return *doc.ruth;
}

inline std::vector<std::string> ruth_fixtures() {
  return {"empty-pair2", "flat-z2", "nonflat-cyclic3", "nonflat-pair2", "pair2-flat", "unit2"};
}

// A ruth with C = 0 on each fiber: an honest representation on V.
inline Ruth v_only(const FiniteGroupoid& G, const std::vector<Matrix>& rep) {
  TwoTermComplex cx;
  for (int x = 0; x < G.num_objects(); ++x) cx.d.push_back(Matrix(rep[G.unit[x]].rows(), 0));
  Ruth R = empty_ruth(G, cx);
  for (int g = 0; g < G.num_arrows(); ++g) {
    R.R1V[g] = rep[g];
    R.R1C[g] = Matrix(0, 0);
  }
  R.unital = true;
  return R;
}

// Fixed-seed ruths that exercise degenerate differentials and non-flatness.
inline std::vector<Ruth> random_ruths(std::uint64_t seed, int count) {
  std::vector<Ruth> out;
  Rng rng(seed);
  std::vector<FiniteGroupoid> bases = {pair_groupoid(2), cyclic_groupoid(2), cyclic_groupoid(3), action_groupoid(2, 2)};
  for (int i = 0; i < count; ++i) {
    const auto& G = bases[i % bases.size()];
    if (i % 3 == 2)
      out.push_back(d_invertible_ruth(G, 1 + i % 2, rng));
    else
      out.push_back(random_ruth(G, rng.range(0, 2), rng.range(0, 2), rng));
  }
  return out;
}

}  // namespace fatlab::testing
