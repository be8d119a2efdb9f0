#pragma once

#include "finrank/rng.hpp"
#include "finrank/weights.hpp"

namespace finrank {

// Seeded generators behind the experiment ensembles. All draws are pulled
// from the passed Rng so a whole ensemble is determined by one seed.

struct AtomicEnsembleParams {
    int min_atoms = 1;
    int max_atoms = 6;
    double separation = 0.1;   // pairwise, in the ambient real metric
    double min_mass = 0.1;     // modulus bounds; phases uniform
    double max_mass = 1.0;
};

// atoms in the unit disk of C^1
Weight random_atomic_c1(Rng& rng, const AtomicEnsembleParams& params = {});

// atoms with coordinates in the unit bidisk of C^d
Weight random_atomic_cd(Rng& rng, int d, int max_atoms,
                        double separation = 0.1);

// atoms in the cube [-1, 1]^D of R^D
Weight random_atomic_real(Rng& rng, int D, int min_atoms, int max_atoms,
                          double separation = 0.1);

// derivative operators of order <= max_order at <= max_points disk points,
// every coefficient drawn with modulus in [0.1, 1]
Weight random_point_distribution_c1(Rng& rng, int max_points = 3,
                                    int max_order = 2);

// random holomorphic polynomial in one variable, degree <= max_degree,
// leading coefficient bounded away from zero
BiPolynomial random_holomorphic_1d(Rng& rng, int max_degree);

// uniform mass 2*pi on n circle points minus a 2*pi point mass at 0; all
// holomorphic moments of degree < n vanish
Weight circle_minus_delta(int n = 2048);

// atoms (1, 1) and (-1, 1) in C^2 with masses +1/-1: the second coordinate
// carries no information in the axis-aligned frame
Weight collision_pair();

}  // namespace finrank
