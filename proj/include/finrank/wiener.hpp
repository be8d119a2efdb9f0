#pragma once

#include <string>
#include <vector>

#include "finrank/rng.hpp"
#include "finrank/weights.hpp"

namespace finrank {

enum class WienerProfile { Gaussian };

// Scale schedule of the smoothed Plancherel functional
// value(R) = R^{-D} int h(xi/R) |FT W(xi)|^2 dxi, h = pi^{-D/2} e^{-|xi|^2},
// whose large-R limit is the atom-mass sum over point masses.
struct WienerEstimate {
    WienerProfile profile = WienerProfile::Gaussian;
    std::vector<double> R_schedule;
    std::vector<double> values;
    double limit = 0.0;           // last value of the schedule
    double error_estimate = 0.0;  // |last - previous|, 0 for singletons
};

enum class Discreteness { Discrete, Continuous, Mixed, Inconclusive };

std::string to_string(Discreteness v);

struct DiscretenessVerdict {
    Discreteness verdict = Discreteness::Inconclusive;
    double atom_mass = 0.0;  // direct functional estimate at the largest scale
    int direction_samples = 0;
};

struct SphereAverageResult {
    double average = 0.0;  // sphere quadrature of the projected atom masses
    double direct = 0.0;   // sum |c_j|^2 over the stored atoms
};

// <W, e^{-i x.xi}>; xi over the ambient real coordinates.
Complex fourier(const Weight& W, const std::vector<double>& xi);

// Pushforward of an Atomic weight on RealSpace(D) under x -> x.zeta for a
// unit vector zeta; colliding images within 1e-9 merge by mass summation.
Weight project(const Weight& W, const std::vector<double>& zeta);

std::vector<double> default_R_schedule();  // {2, 4, 8, 16, 32, 64}

// Atomic weights use the closed form sum c_j conj(c_k) e^{-R^2|x_j-x_k|^2/4};
// one-dimensional densities are integrated over |xi| <= xi_max with a
// Gaussian tail bound checked against the requested scales.
WienerEstimate atom_mass(const Weight& W, const std::vector<double>& R_schedule,
                         double xi_max = 2048.0);
WienerEstimate atom_mass(const Weight& W);

// Equal-weight directions: uniform angles for D = 2, Fibonacci sphere for
// D = 3 (the grids behind the sphere-average quadrature).
std::vector<std::vector<double>> sphere_directions(int D, int n);

SphereAverageResult sphere_average_check(const Weight& W, int n_nodes = 500);

DiscretenessVerdict classify_discreteness(const Weight& W, int n_directions,
                                          std::uint64_t seed);

}  // namespace finrank
