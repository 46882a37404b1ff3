#pragma once

// Generators for valid structures used by tests, the CLI and the examples command.

#include <string>
#include <vector>

#include "fatlab/fat.hpp"
#include "fatlab/rng.hpp"
#include "fatlab/ruth.hpp"

namespace fatlab {

// Constant complex d on every object, R1 = 1, R2 = 0.
Ruth trivial_ruth(const FiniteGroupoid& G, const Matrix& d);

// d invertible of size dim on every fiber, R1V random invertible (identity on
// units when unital), R1C = d^-1 R1V d and R2 = d^-1 (R1V R1V - R1V(gh)).
Ruth d_invertible_ruth(const FiniteGroupoid& G, std::size_t dim, Rng& rng, bool unital = true);

// cyclic(2) acting by -1 on C = V = Q with d = 0.
Ruth sign_ruth_z2();

// Chain isos Phi per object and mu per arrow, zero on units.
using GaugeData = FatMorphism;

GaugeData random_gauge(const Ruth& R, Rng& rng, unsigned mu_percent = 60);

// The ruth R' for which (PhiC, PhiV, mu) is a morphism R -> R'.
Ruth gauge_transform(const Ruth& R, const GaugeData& m);

// Random non-flat ruth with a possibly degenerate differential: a trivial
// action on a random constant complex, moved by a random gauge.
Ruth random_ruth(const FiniteGroupoid& G, std::size_t c, std::size_t v, Rng& rng);

// Named structures for the examples command and the shipped fixture files.
std::vector<std::string> example_names();

}  // namespace fatlab
