#include "fatlab/fixtures.hpp"

namespace fatlab {

Ruth trivial_ruth(const FiniteGroupoid& G, const Matrix& d) {
  TwoTermComplex cx;
  cx.d.assign(G.num_objects(), d);
  Ruth R = empty_ruth(G, cx);
  for (int g = 0; g < G.num_arrows(); ++g) {
    R.R1C[g] = Matrix::identity(d.cols());
    R.R1V[g] = Matrix::identity(d.rows());
  }
  R.unital = true;
  return R;
}

Ruth d_invertible_ruth(const FiniteGroupoid& G, std::size_t dim, Rng& rng, bool unital) {
  TwoTermComplex cx;
  for (int x = 0; x < G.num_objects(); ++x) cx.d.push_back(rng.invertible(dim));
  Ruth R = empty_ruth(G, cx);
  std::vector<Matrix> dinv;
  for (int x = 0; x < G.num_objects(); ++x) dinv.push_back(inverse(cx.d[x]));
  for (int g = 0; g < G.num_arrows(); ++g)
    R.R1V[g] = (unital && G.is_unit(g)) ? Matrix::identity(dim) : rng.invertible(dim);
  for (int g = 0; g < G.num_arrows(); ++g) R.R1C[g] = dinv[G.t(g)] * R.R1V[g] * cx.d[G.s(g)];
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h)
      if (G.composable(g, h)) R.r2(g, h) = dinv[G.t(g)] * (R.R1V[g] * R.R1V[h] - R.R1V[G.mul(g, h)]);
  R.unital = unital;
  return R;
}

Ruth sign_ruth_z2() {
  Ruth R = trivial_ruth(cyclic_groupoid(2), Matrix(1, 1));
  R.R1C[1] = Matrix{{-1}};
  R.R1V[1] = Matrix{{-1}};
  return R;
}

GaugeData random_gauge(const Ruth& R, Rng& rng, unsigned mu_percent) {
  GaugeData m;
  for (int x = 0; x < R.G.num_objects(); ++x) {
    m.PhiC.push_back(rng.invertible(R.c(x)));
    m.PhiV.push_back(rng.invertible(R.v(x)));
  }
  for (int g = 0; g < R.G.num_arrows(); ++g) {
    const std::size_t rows = R.c(R.G.t(g)), cols = R.v(R.G.s(g));
    m.mu.push_back(R.G.is_unit(g) ? Matrix(rows, cols) : rng.sparse_matrix(rows, cols, mu_percent));
  }
  return m;
}

Ruth gauge_transform(const Ruth& R, const GaugeData& m) {
  const auto& G = R.G;
  TwoTermComplex cx;
  std::vector<Matrix> invC, invV;
  for (int x = 0; x < G.num_objects(); ++x) {
    invC.push_back(inverse(m.PhiC[x]));
    invV.push_back(inverse(m.PhiV[x]));
    cx.d.push_back(m.PhiV[x] * R.d(x) * invC[x]);
  }
  Ruth S = empty_ruth(G, cx);
  S.unital = R.unital;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int s = G.s(g), t = G.t(g);
    S.R1C[g] = (m.PhiC[t] * R.R1C[g] + m.mu[g] * R.d(s)) * invC[s];
    S.R1V[g] = (m.PhiV[t] * R.R1V[g] + cx.d[t] * m.mu[g]) * invV[s];
  }
  for (int g = 0; g < G.num_arrows(); ++g)
    for (int h = 0; h < G.num_arrows(); ++h) {
      if (!G.composable(g, h)) continue;
      S.r2(g, h) = (m.mu[g] * R.R1V[h] + S.R1C[g] * m.mu[h] - m.mu[G.mul(g, h)] + m.PhiC[G.t(g)] * R.r2(g, h)) *
                   invV[G.s(h)];
    }
  return S;
}

Ruth random_ruth(const FiniteGroupoid& G, std::size_t c, std::size_t v, Rng& rng) {
  Ruth base = trivial_ruth(G, rng.matrix(v, c));
  return gauge_transform(base, random_gauge(base, rng));
}

std::vector<std::string> example_names() {
  return {"pair2", "pair3", "cyclic2", "cyclic3", "flat-z2", "nonflat-pair2", "pair2-flat", "unit2", "empty-pair2",
          "nonflat-cyclic3", "morphism-pair2", "inner-s3", "crossed-z3-s3", "trivial-h-z2", "sl2", "lie-d-invertible"};
}

}  // namespace fatlab
