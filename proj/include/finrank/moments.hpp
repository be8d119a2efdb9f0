#pragma once

#include <Eigen/Dense>

#include "finrank/weights.hpp"

namespace finrank {

enum class BasisKind { MonomialBi, Harmonic };

// Truncated moment matrix. For MonomialBi the labels are the holomorphic
// multi-indices alpha with |alpha| <= N in graded-lex order and
// entries(r, c) = <W, z^{alpha_r} zbar^{alpha_c}>. For Harmonic the labels
// are (degree, index) pairs into a HarmonicBasis and
// entries(r, c) = <W, f_r * conj(f_c)>.
struct MomentMatrix {
    BasisKind basis_kind = BasisKind::MonomialBi;
    int degree_cutoff = 0;
    std::vector<MultiIndex> mono_labels;            // MonomialBi
    std::vector<std::pair<int, int>> harm_labels;   // Harmonic: (degree, index)
    Eigen::MatrixXcd entries;

    int size() const { return static_cast<int>(entries.rows()); }
};

// Orthonormal bases of homogeneous harmonic polynomials per degree.
struct HarmonicBasis {
    int dim = 0;
    std::vector<std::vector<RealPolynomial>> by_degree;  // [k][i], degree k

    int count_up_to(int k_max) const;
    const RealPolynomial& at(int degree, int index) const;
};

MomentMatrix analytic_moment_matrix(const Weight& W, int N);

HarmonicBasis harmonic_basis(int D, int k_max);

MomentMatrix harmonic_moment_matrix(const Weight& W, int k_max);

// Moment matrix of |g|^2 W for holomorphic g.
MomentMatrix twist(const Weight& W, const BiPolynomial& g, int N);

// Rows/columns with alpha_j = beta_j = 0, re-labelled in dimension d-1;
// equals the analytic moment matrix of project_forget(W, j).
MomentMatrix coordinate_submatrix(const Weight& W, int j, int N);

// Pushforward of an Atomic/PointDistribution weight under forgetting complex
// coordinate j; point collisions within 1e-9 merge.
Weight project_forget(const Weight& W, int j);

}  // namespace finrank
