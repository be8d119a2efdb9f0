#pragma once

#include <optional>

#include "finrank/moments.hpp"
#include "finrank/rng.hpp"

namespace finrank {

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values;
};

// rank = #{sigma_k > eps_rel * sigma_1}; the zero matrix has rank 0.
RankResult numerical_rank(const Eigen::MatrixXcd& M, double eps_rel = 1e-10);
RankResult numerical_rank(const MomentMatrix& M, double eps_rel = 1e-10);

// Dense 1-D moment table t(k, l) = <F, z^k zbar^l>, extendable on demand
// through the pairing oracle it was built from.
class MomentTable {
public:
    using Oracle = std::function<Complex(int k, int l)>;

    MomentTable(Oracle oracle, int rows, int cols);

    // Fast oracles per family; ComplexSpace(1) weights only.
    static MomentTable from_weight(const Weight& W, int rows, int cols);

    const Eigen::MatrixXcd& data() const { return data_; }
    int rows() const { return static_cast<int>(data_.rows()); }
    int cols() const { return static_cast<int>(data_.cols()); }
    void extend(int rows, int cols);

private:
    Oracle oracle_;
    Eigen::MatrixXcd data_;
};

// Smallest-singular-value right vector of the (K+1) x (m+1) column block,
// K = rows-1 >= 2m. The all-zero table yields the zero polynomial marker.
UniPolynomial null_polynomial(const MomentTable& T, int m);

// t'(k, l) = (l+1)^{-1} sum_j h_j t(k, l+j); loses deg h columns.
MomentTable reduce_moments(const MomentTable& T, const UniPolynomial& h);

// Conjugated companion-matrix roots of h after leading-coefficient deflation
// at rel_tol; these are the support candidates h(zbar) = 0.
std::vector<Complex> support_candidates(const UniPolynomial& h,
                                        double deflate_rel_tol = 1e-8);

struct RecoveryReport {
    std::vector<std::vector<Complex>> support;   // points in C^d
    std::vector<DifferentialOperator> operators; // real-coordinate, dim 2d
    int rank_used = 0;                           // total degree of stage polynomials
    std::vector<double> singular_values;         // accepted stage blocks, in order
    double moment_residual = 0.0;                // relative, over the fit block
    std::vector<UniPolynomial> stage_polynomials;
};

RecoveryReport recover_1d(const Weight& W, int m_bound, int order_bound);

RecoveryReport recover_multid(const Weight& W, int m_bound, int order_bound,
                              Rng& rng);

// G(z) = <W, 1/(pi (z - w))>; z must stay > 1e-6 away from point supports.
Complex cauchy_transform(const Weight& W, Complex z);

// Moments of the reconstructed point distribution of a report, for round
// trips: <sum_q L_q delta_{x_q}, z^k zbar^l>.
Complex report_moment(const RecoveryReport& report, const MultiIndex& alpha,
                      const MultiIndex& beta);

}  // namespace finrank
