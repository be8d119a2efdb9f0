#include "finrank/recovery.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "finrank/quadrature.hpp"

namespace finrank {

namespace {

constexpr double kScreenTol = 1e-8;    // sigma_min/sigma_1 gate for null vectors
constexpr double kValidateTol = 1e-10; // shifted-system residual for acceptance
constexpr double kNullTableTol = 1e-12;
constexpr double kClusterRadius = 3e-3;
constexpr double kPruneTol = 1e-9;
constexpr double kResidualTol = 1e-6;
constexpr const char* kFailMsg =
    "recovery failed: weight not point-supported at given bounds";

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// d_x^p d_y^q (z^k zbar^l) at the point a, via the Wirtinger expansion
// d_x = d_z + d_zbar, d_y = i (d_z - d_zbar).
Complex op_moment(int k, int l, int p, int q, Complex a) {
    Complex total = 0.0;
    const Complex iq = std::pow(Complex(0.0, 1.0), q);
    for (int r = 0; r <= p; ++r) {
        for (int s = 0; s <= q; ++s) {
            const int dz = r + s;
            const int dzb = p - r + q - s;
            if (k < dz || l < dzb) continue;
            double fall = 1.0;
            for (int e = 0; e < dz; ++e) fall *= k - e;
            for (int e = 0; e < dzb; ++e) fall *= l - e;
            Complex val = fall;
            for (int e = 0; e < k - dz; ++e) val *= a;
            for (int e = 0; e < l - dzb; ++e) val *= std::conj(a);
            const double sign = ((q - s) % 2 == 0) ? 1.0 : -1.0;
            total += binom(p, r) * binom(q, s) * sign * iq * val;
        }
    }
    return total;
}

// prod_j d_{x_j}^{p_j} d_{y_j}^{q_j} (z^alpha zbar^beta) at a in C^d;
// gamma interleaved as (p_1, q_1, ..., p_d, q_d).
Complex op_moment_multid(const MultiIndex& alpha, const MultiIndex& beta,
                         const MultiIndex& gamma,
                         const std::vector<Complex>& a) {
    Complex total = 1.0;
    for (size_t j = 0; j < a.size(); ++j) {
        total *= op_moment(alpha[j], beta[j], gamma[2 * j], gamma[2 * j + 1], a[j]);
        if (total == Complex(0.0, 0.0)) return total;
    }
    return total;
}

}  // namespace

// ---------------------------------------------------------------- rank

RankResult numerical_rank(const Eigen::MatrixXcd& M, double eps_rel) {
    if (M.rows() == 0 || M.cols() == 0)
        throw ValidationError("numerical_rank: empty matrix");
    if (eps_rel <= 0.0 || eps_rel >= 1.0)
        throw ValidationError("numerical_rank: eps_rel must be in (0, 1)");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    RankResult out;
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    if (sv.size() == 0 || sv(0) == 0.0) return out;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > eps_rel * sv(0)) ++out.rank;
    return out;
}

RankResult numerical_rank(const MomentMatrix& M, double eps_rel) {
    return numerical_rank(M.entries, eps_rel);
}

// ---------------------------------------------------------------- MomentTable

MomentTable::MomentTable(Oracle oracle, int rows, int cols)
    : oracle_(std::move(oracle)) {
    if (rows < 1 || cols < 1)
        throw ValidationError("moment table needs positive extents");
    data_.resize(rows, cols);
    for (int k = 0; k < rows; ++k)
        for (int l = 0; l < cols; ++l) data_(k, l) = oracle_(k, l);
}

void MomentTable::extend(int rows, int cols) {
    const int r0 = MomentTable::rows(), c0 = MomentTable::cols();
    if (rows <= r0 && cols <= c0) return;
    if (!oracle_) throw ValidationError("moment table has no oracle to extend");
    Eigen::MatrixXcd bigger(std::max(rows, r0), std::max(cols, c0));
    for (int k = 0; k < bigger.rows(); ++k)
        for (int l = 0; l < bigger.cols(); ++l)
            bigger(k, l) = (k < r0 && l < c0) ? data_(k, l) : oracle_(k, l);
    data_ = std::move(bigger);
}

MomentTable MomentTable::from_weight(const Weight& W, int rows, int cols) {
    if (W.ambient().kind != SpaceKind::ComplexSpace || W.ambient().dim != 1)
        throw DimensionError("moment tables require a weight over C^1");
    Oracle oracle;
    if (W.is_atomic()) {
        const auto& at = W.atomic();
        std::vector<Complex> zs;
        for (const auto& p : at.points) zs.push_back(Complex(p[0], p[1]));
        std::vector<Complex> ms = at.masses;
        oracle = [zs, ms](int k, int l) {
            Complex t = 0.0;
            for (size_t j = 0; j < zs.size(); ++j) {
                Complex v = ms[j];
                for (int e = 0; e < k; ++e) v *= zs[j];
                for (int e = 0; e < l; ++e) v *= std::conj(zs[j]);
                t += v;
            }
            return t;
        };
    } else if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        std::vector<Complex> zs;
        for (const auto& p : pd.points) zs.push_back(Complex(p[0], p[1]));
        std::vector<DifferentialOperator> ops = pd.operators;
        oracle = [zs, ops](int k, int l) {
            Complex t = 0.0;
            for (size_t j = 0; j < zs.size(); ++j)
                for (const auto& [g, c] : ops[j].terms())
                    t += c * op_moment(k, l, g[0], g[1], zs[j]);
            return t;
        };
    } else if (W.is_density()) {
        const auto& de = W.density();
        // cache quadrature nodes of the planar box once
        auto rx = gauss_legendre_on(de.quadrature_order, de.box.intervals[0].first,
                                    de.box.intervals[0].second);
        auto ry = gauss_legendre_on(de.quadrature_order, de.box.intervals[1].first,
                                    de.box.intervals[1].second);
        auto eval = de.evaluate;
        oracle = [rx, ry, eval](int k, int l) {
            Complex t = 0.0;
            std::vector<double> x(2);
            for (size_t i = 0; i < rx.nodes.size(); ++i) {
                for (size_t j = 0; j < ry.nodes.size(); ++j) {
                    x[0] = rx.nodes[i];
                    x[1] = ry.nodes[j];
                    const Complex z(x[0], x[1]);
                    Complex v = rx.weights[i] * ry.weights[j] * eval(x);
                    for (int e = 0; e < k; ++e) v *= z;
                    for (int e = 0; e < l; ++e) v *= std::conj(z);
                    t += v;
                }
            }
            return t;
        };
    } else {
        throw UnsupportedFamilyError("moment tables: unsupported weight family");
    }
    return MomentTable(std::move(oracle), rows, cols);
}

// ------------------------------------------------------------ null extraction

UniPolynomial null_polynomial(const MomentTable& T, int m) {
    if (m < 1) throw ValidationError("null_polynomial: m must be >= 1");
    if (T.cols() < m + 1)
        throw ValidationError("null_polynomial: table too narrow");
    if (T.rows() < 2 * m + 1)
        throw ValidationError("null_polynomial: table needs K >= 2m rows");
    const Eigen::MatrixXcd B = T.data().leftCols(m + 1);
    if (B.cwiseAbs().maxCoeff() == 0.0) return UniPolynomial::zero();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinV);
    const Eigen::VectorXcd v = svd.matrixV().col(m);
    std::vector<Complex> coeffs(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) coeffs[static_cast<size_t>(i)] = v(i);
    return UniPolynomial(std::move(coeffs));
}

MomentTable reduce_moments(const MomentTable& T, const UniPolynomial& h) {
    if (h.is_zero()) throw ValidationError("reduce_moments: h must be nonzero");
    const int dh = h.degree();
    const int cols = T.cols() - dh;
    if (cols < 1) throw ValidationError("reduce_moments: insufficient table width");
    const auto& t = T.data();
    Eigen::MatrixXcd out(t.rows(), cols);
    for (int l = 0; l < cols; ++l) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(t.rows());
        for (int j = 0; j <= dh; ++j)
            acc += h.coeffs()[static_cast<size_t>(j)] * t.col(l + j);
        out.col(l) = acc / static_cast<double>(l + 1);
    }
    Eigen::MatrixXcd captured = std::move(out);
    return MomentTable(
        [captured](int k, int l) {
            if (k >= captured.rows() || l >= captured.cols())
                throw ValidationError("reduced table cannot be extended");
            return captured(k, l);
        },
        static_cast<int>(captured.rows()), cols);
}

std::vector<Complex> support_candidates(const UniPolynomial& h,
                                        double deflate_rel_tol) {
    const UniPolynomial hd = h.deflated(deflate_rel_tol);
    const int m = hd.degree();
    if (m < 1) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
    const Complex lead = hd.coeffs()[static_cast<size_t>(m)];
    for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i)
        C(i, m - 1) = -hd.coeffs()[static_cast<size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Complex> roots;
    for (int i = 0; i < m; ++i) roots.push_back(std::conj(es.eigenvalues()(i)));
    return roots;
}

// ------------------------------------------------------------------ 1-D loop

namespace {

// relative residual of h against the whole shifted-column system
double shifted_residual(const Eigen::MatrixXcd& t, const UniPolynomial& h) {
    const int dh = h.degree();
    const int cols = static_cast<int>(t.cols()) - dh;
    double num = 0.0;
    for (int l = 0; l < cols; ++l) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(t.rows());
        for (int j = 0; j <= dh; ++j)
            v += h.coeffs()[static_cast<size_t>(j)] * t.col(l + j);
        num += v.squaredNorm();
    }
    double hn = 0.0;
    for (Complex c : h.coeffs()) hn += std::norm(c);
    return std::sqrt(num) / (t.norm() * std::sqrt(hn));
}

struct StageHit {
    UniPolynomial h;
    std::vector<double> block_singulars;
};

// scan m = 1..M for the first screened-and-validated annihilator
std::optional<StageHit> extract_stage_polynomial(const Eigen::MatrixXcd& t,
                                                 int M, double scale) {
    const int rows = static_cast<int>(t.rows());
    const int cols = static_cast<int>(t.cols());
    const int m_cap = std::min({M, cols - 1, (rows - 1) / 2});
    for (int m = 1; m <= m_cap; ++m) {
        const Eigen::MatrixXcd B = t.topLeftCorner(2 * m + 1, m + 1);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(0) < 1e-14 * scale) return std::nullopt;
        if (sv(m) / sv(0) >= kScreenTol) continue;
        std::vector<Complex> coeffs(static_cast<size_t>(m) + 1);
        for (int i = 0; i <= m; ++i)
            coeffs[static_cast<size_t>(i)] = svd.matrixV()(i, m);
        UniPolynomial h(std::move(coeffs));
        if (shifted_residual(t, h) < kValidateTol) {
            StageHit hit;
            hit.h = std::move(h);
            hit.block_singulars.assign(sv.data(), sv.data() + sv.size());
            return hit;
        }
    }
    return std::nullopt;
}

struct Cluster {
    Complex center;
    int multiplicity;
};

std::vector<Cluster> cluster_candidates(const std::vector<Complex>& cands) {
    std::vector<std::vector<Complex>> groups;
    for (Complex c : cands) {
        bool placed = false;
        for (auto& g : groups) {
            if (std::abs(c - g.front()) < kClusterRadius) {
                g.push_back(c);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({c});
    }
    std::vector<Cluster> out;
    for (const auto& g : groups) {
        Complex s = 0.0;
        for (Complex c : g) s += c;
        out.push_back({s / static_cast<double>(g.size()), static_cast<int>(g.size())});
    }
    return out;
}

// gamma list (p, q) with p + q <= order, graded
std::vector<std::pair<int, int>> planar_gammas(int order) {
    std::vector<std::pair<int, int>> gs;
    for (int d = 0; d <= order; ++d)
        for (int p = d; p >= 0; --p) gs.push_back({p, d - p});
    return gs;
}

struct FitResult {
    std::vector<Complex> points;
    std::vector<int> orders;
    Eigen::VectorXcd coeffs;  // grouped by point, planar_gammas order
    double residual = 1.0;
};

Eigen::MatrixXcd design_matrix_1d(const std::vector<Complex>& pts,
                                  const std::vector<int>& orders, int F) {
    const int rows = (F + 1) * (F + 1);
    int cols = 0;
    for (int o : orders) cols += static_cast<int>(planar_gammas(o).size());
    Eigen::MatrixXcd A(rows, cols);
    int col = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (auto [p, q] : planar_gammas(orders[i])) {
            int row = 0;
            for (int k = 0; k <= F; ++k)
                for (int l = 0; l <= F; ++l)
                    A(row++, col) = op_moment(k, l, p, q, pts[i]);
            ++col;
        }
    }
    return A;
}

Eigen::VectorXcd solve_ls(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
    return A.completeOrthogonalDecomposition().solve(b);
}

// Gauss-Newton refinement of positions and coefficients against the moment
// block; the linearization treats (x_i, y_i) and Re/Im of each coefficient
// as real unknowns.
FitResult polish_1d(std::vector<Complex> pts, std::vector<int> orders,
                    const Eigen::VectorXcd& b, int F, int iterations = 4) {
    FitResult fit;
    const double bnorm = b.norm();
    Eigen::VectorXcd x;
    for (int it = 0; it < iterations; ++it) {
        const Eigen::MatrixXcd A = design_matrix_1d(pts, orders, F);
        x = solve_ls(A, b);
        const Eigen::VectorXcd r = b - A * x;
        if (r.norm() <= 1e-14 * bnorm) break;
        const int rows = static_cast<int>(A.rows());
        const int npts = static_cast<int>(pts.size());
        const int ncoef = static_cast<int>(A.cols());
        Eigen::MatrixXd J(2 * rows, 2 * npts + 2 * ncoef);
        // position columns
        int col0 = 0;
        {
            int base = 0;
            for (int i = 0; i < npts; ++i) {
                Eigen::VectorXcd dx = Eigen::VectorXcd::Zero(rows);
                Eigen::VectorXcd dy = Eigen::VectorXcd::Zero(rows);
                const auto gs = planar_gammas(orders[static_cast<size_t>(i)]);
                for (size_t gidx = 0; gidx < gs.size(); ++gidx) {
                    const auto [p, q] = gs[gidx];
                    const Complex c = x(base + static_cast<int>(gidx));
                    int row = 0;
                    for (int k = 0; k <= F; ++k)
                        for (int l = 0; l <= F; ++l) {
                            dx(row) += c * op_moment(k, l, p + 1, q,
                                                     pts[static_cast<size_t>(i)]);
                            dy(row) += c * op_moment(k, l, p, q + 1,
                                                     pts[static_cast<size_t>(i)]);
                            ++row;
                        }
                }
                J.col(col0).head(rows) = dx.real();
                J.col(col0).tail(rows) = dx.imag();
                J.col(col0 + 1).head(rows) = dy.real();
                J.col(col0 + 1).tail(rows) = dy.imag();
                col0 += 2;
                base += static_cast<int>(gs.size());
            }
        }
        // coefficient columns
        for (int j = 0; j < ncoef; ++j) {
            J.col(col0).head(rows) = A.col(j).real();
            J.col(col0).tail(rows) = A.col(j).imag();
            const Eigen::VectorXcd aj = Complex(0.0, 1.0) * A.col(j);
            J.col(col0 + 1).head(rows) = aj.real();
            J.col(col0 + 1).tail(rows) = aj.imag();
            col0 += 2;
        }
        Eigen::VectorXd rr(2 * rows);
        rr.head(rows) = r.real();
        rr.tail(rows) = r.imag();
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(rr);
        for (int i = 0; i < npts; ++i)
            pts[static_cast<size_t>(i)] += Complex(step(2 * i), step(2 * i + 1));
    }
    const Eigen::MatrixXcd A = design_matrix_1d(pts, orders, F);
    x = solve_ls(A, b);
    fit.points = std::move(pts);
    fit.orders = std::move(orders);
    fit.coeffs = x;
    fit.residual = bnorm == 0.0 ? 0.0 : (b - A * x).norm() / bnorm;
    return fit;
}

}  // namespace

RecoveryReport recover_1d(const Weight& W, int m_bound, int order_bound) {
    if (m_bound < 1) throw ValidationError("recover_1d: m_bound must be >= 1");
    if (order_bound < 0)
        throw ValidationError("recover_1d: order_bound must be >= 0");
    const int M = m_bound * (order_bound + 1);
    const int n_stages = order_bound + 1;
    const int K_rows = 2 * M;
    const int L_cols = M * (n_stages + 1);
    const int F = 2 * m_bound;

    MomentTable table = MomentTable::from_weight(
        W, K_rows + 1, std::max(L_cols, F) + 1);
    const Eigen::MatrixXcd t0 = table.data();
    const double scale = t0.cwiseAbs().maxCoeff();

    RecoveryReport report;
    if (scale == 0.0) return report;  // the zero weight: empty support

    // stage loop: extract annihilators, collect conjugated roots, reduce
    std::vector<Complex> candidates;
    Eigen::MatrixXcd t = t0;
    for (int stage = 0; stage < n_stages; ++stage) {
        const int probe = std::min<int>(static_cast<int>(t.cols()), M + 1);
        if (t.leftCols(probe).cwiseAbs().maxCoeff() < kNullTableTol * scale)
            break;
        auto hit = extract_stage_polynomial(t, M, scale);
        if (!hit) break;
        report.stage_polynomials.push_back(hit->h);
        report.rank_used += hit->h.degree();
        report.singular_values.insert(report.singular_values.end(),
                                      hit->block_singulars.begin(),
                                      hit->block_singulars.end());
        for (Complex c : support_candidates(hit->h)) candidates.push_back(c);
        const int dh = hit->h.degree();
        const int newc = static_cast<int>(t.cols()) - dh;
        if (newc < 1) break;
        Eigen::MatrixXcd tn(t.rows(), newc);
        for (int l = 0; l < newc; ++l) {
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(t.rows());
            for (int j = 0; j <= dh; ++j)
                acc += hit->h.coeffs()[static_cast<size_t>(j)] * t.col(l + j);
            tn.col(l) = acc / static_cast<double>(l + 1);
        }
        t = std::move(tn);
    }

    const auto clusters = cluster_candidates(candidates);
    if (clusters.empty()) throw RecoveryError(kFailMsg);

    // least-squares fit over the original moment block
    Eigen::VectorXcd b((F + 1) * (F + 1));
    {
        int row = 0;
        for (int k = 0; k <= F; ++k)
            for (int l = 0; l <= F; ++l) b(row++) = t0(k, l);
    }
    std::vector<Complex> pts;
    std::vector<int> orders;
    for (const auto& cl : clusters) {
        pts.push_back(cl.center);
        orders.push_back(order_bound + cl.multiplicity - 1);
    }
    Eigen::MatrixXcd A = design_matrix_1d(pts, orders, F);
    Eigen::VectorXcd x = solve_ls(A, b);

    // prune candidates with negligible fitted operator norm
    std::vector<double> norms(pts.size(), 0.0);
    {
        int base = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            const int n = static_cast<int>(planar_gammas(orders[i]).size());
            for (int jj = 0; jj < n; ++jj) norms[i] += std::abs(x(base + jj));
            base += n;
        }
    }
    const double nmax = *std::max_element(norms.begin(), norms.end());
    std::vector<Complex> kept;
    std::vector<int> kept_orders;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (norms[i] >= kPruneTol * nmax) {
            kept.push_back(pts[i]);
            kept_orders.push_back(orders[i]);
        }
    }
    if (static_cast<int>(kept.size()) > m_bound) throw RecoveryError(kFailMsg);
    if (kept.empty()) throw RecoveryError(kFailMsg);

    FitResult fit = polish_1d(std::move(kept), std::move(kept_orders), b, F);
    if (!(fit.residual < kResidualTol)) throw RecoveryError(kFailMsg);

    // assemble the report
    int base = 0;
    for (size_t i = 0; i < fit.points.size(); ++i) {
        report.support.push_back({fit.points[i]});
        DifferentialOperator L;
        const auto gs = planar_gammas(fit.orders[i]);
        for (size_t gidx = 0; gidx < gs.size(); ++gidx) {
            const Complex c = fit.coeffs(base + static_cast<int>(gidx));
            if (c != Complex(0.0, 0.0))
                L.add_term({gs[gidx].first, gs[gidx].second}, c);
            }
        base += static_cast<int>(gs.size());
        report.operators.push_back(std::move(L));
    }
    report.moment_residual = fit.residual;
    return report;
}

// ------------------------------------------------------------------- multi-d

namespace {

// support candidates of a 1-D table via the stage loop only
std::vector<Complex> table_support(const Eigen::MatrixXcd& t0, int m_bound,
                                   int order_bound) {
    const int M = m_bound * (order_bound + 1);
    const int n_stages = order_bound + 1;
    const double scale = t0.cwiseAbs().maxCoeff();
    std::vector<Complex> candidates;
    if (scale == 0.0) return candidates;
    Eigen::MatrixXcd t = t0;
    for (int stage = 0; stage < n_stages; ++stage) {
        const int probe = std::min<int>(static_cast<int>(t.cols()), M + 1);
        if (t.leftCols(probe).cwiseAbs().maxCoeff() < kNullTableTol * scale)
            break;
        auto hit = extract_stage_polynomial(t, M, scale);
        if (!hit) break;
        for (Complex c : support_candidates(hit->h)) candidates.push_back(c);
        const int dh = hit->h.degree();
        const int newc = static_cast<int>(t.cols()) - dh;
        if (newc < 1) break;
        Eigen::MatrixXcd tn(t.rows(), newc);
        for (int l = 0; l < newc; ++l) {
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(t.rows());
            for (int j = 0; j <= dh; ++j)
                acc += hit->h.coeffs()[static_cast<size_t>(j)] * t.col(l + j);
            tn.col(l) = acc / static_cast<double>(l + 1);
        }
        t = std::move(tn);
    }
    std::vector<Complex> centers;
    for (const auto& cl : cluster_candidates(candidates))
        centers.push_back(cl.center);
    return centers;
}

// gammas over 2d real coordinates with |gamma| <= order
std::vector<MultiIndex> multid_gammas(int d, int order) {
    return indices_up_to(2 * d, order);
}

Eigen::MatrixXcd design_matrix_multid(
    const std::vector<std::vector<Complex>>& pts, int order,
    const std::vector<MultiIndex>& alphas) {
    const int na = static_cast<int>(alphas.size());
    const int rows = na * na;
    const int d = pts.empty() ? 1 : static_cast<int>(pts[0].size());
    const auto gammas = multid_gammas(d, order);
    const int per = static_cast<int>(gammas.size());
    Eigen::MatrixXcd A(rows, static_cast<int>(pts.size()) * per);
    for (size_t i = 0; i < pts.size(); ++i) {
        for (int g = 0; g < per; ++g) {
            int row = 0;
            for (int ra = 0; ra < na; ++ra)
                for (int cb = 0; cb < na; ++cb)
                    A(row++, static_cast<int>(i) * per + g) = op_moment_multid(
                        alphas[static_cast<size_t>(ra)],
                        alphas[static_cast<size_t>(cb)], gammas[static_cast<size_t>(g)],
                        pts[i]);
        }
    }
    return A;
}

struct MultiFit {
    std::vector<std::vector<Complex>> points;
    Eigen::VectorXcd coeffs;
    double residual = 1.0;
};

MultiFit polish_multid(std::vector<std::vector<Complex>> pts, int order,
                       const Eigen::VectorXcd& b,
                       const std::vector<MultiIndex>& alphas,
                       int iterations = 4) {
    MultiFit fit;
    const double bnorm = b.norm();
    const int d = static_cast<int>(pts[0].size());
    const auto gammas = multid_gammas(d, order);
    const int per = static_cast<int>(gammas.size());
    Eigen::VectorXcd x;
    for (int it = 0; it < iterations; ++it) {
        const Eigen::MatrixXcd A = design_matrix_multid(pts, order, alphas);
        x = solve_ls(A, b);
        const Eigen::VectorXcd r = b - A * x;
        if (r.norm() <= 1e-14 * bnorm) break;
        const int rows = static_cast<int>(A.rows());
        const int npts = static_cast<int>(pts.size());
        const int ncoef = static_cast<int>(A.cols());
        Eigen::MatrixXd J(2 * rows, 2 * d * npts + 2 * ncoef);
        int col0 = 0;
        const int na = static_cast<int>(alphas.size());
        for (int i = 0; i < npts; ++i) {
            for (int axis = 0; axis < 2 * d; ++axis) {
                Eigen::VectorXcd dcol = Eigen::VectorXcd::Zero(rows);
                for (int g = 0; g < per; ++g) {
                    const Complex c = x(i * per + g);
                    if (c == Complex(0.0, 0.0)) continue;
                    MultiIndex g2 = gammas[static_cast<size_t>(g)];
                    g2[static_cast<size_t>(axis)] += 1;
                    int row = 0;
                    for (int ra = 0; ra < na; ++ra)
                        for (int cb = 0; cb < na; ++cb)
                            dcol(row++) += c * op_moment_multid(
                                               alphas[static_cast<size_t>(ra)],
                                               alphas[static_cast<size_t>(cb)], g2,
                                               pts[static_cast<size_t>(i)]);
                }
                J.col(col0).head(rows) = dcol.real();
                J.col(col0).tail(rows) = dcol.imag();
                ++col0;
            }
        }
        for (int j = 0; j < ncoef; ++j) {
            J.col(col0).head(rows) = A.col(j).real();
            J.col(col0).tail(rows) = A.col(j).imag();
            const Eigen::VectorXcd aj = Complex(0.0, 1.0) * A.col(j);
            J.col(col0 + 1).head(rows) = aj.real();
            J.col(col0 + 1).tail(rows) = aj.imag();
            col0 += 2;
        }
        Eigen::VectorXd rr(2 * rows);
        rr.head(rows) = r.real();
        rr.tail(rows) = r.imag();
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(rr);
        for (int i = 0; i < npts; ++i)
            for (int axis = 0; axis < d; ++axis)
                pts[static_cast<size_t>(i)][static_cast<size_t>(axis)] +=
                    Complex(step(2 * d * i + 2 * axis), step(2 * d * i + 2 * axis + 1));
    }
    const Eigen::MatrixXcd A = design_matrix_multid(pts, order, alphas);
    x = solve_ls(A, b);
    fit.points = std::move(pts);
    fit.coeffs = x;
    fit.residual = bnorm == 0.0 ? 0.0 : (b - A * x).norm() / bnorm;
    return fit;
}

}  // namespace

RecoveryReport recover_multid(const Weight& W, int m_bound, int order_bound,
                              Rng& rng) {
    if (W.ambient().kind != SpaceKind::ComplexSpace || W.ambient().dim < 2)
        throw DimensionError("recover_multid expects a weight over C^d, d >= 2");
    if (m_bound < 1) throw ValidationError("recover_multid: m_bound must be >= 1");
    const int d = W.ambient().dim;
    const int M = m_bound * (order_bound + 1);
    const int n_stages = order_bound + 1;
    const int K_rows = 2 * M;
    const int L_cols = M * (n_stages + 1);
    const int F = 2 * m_bound;

    const auto alphas = indices_up_to(d, F);
    const int na = static_cast<int>(alphas.size());

    // original-frame moment block
    Eigen::VectorXcd b(na * na);
    {
        int row = 0;
        for (int ra = 0; ra < na; ++ra)
            for (int cb = 0; cb < na; ++cb)
                b(row++) = pair(W, BiPolynomial::monomial(
                                       d, alphas[static_cast<size_t>(ra)],
                                       alphas[static_cast<size_t>(cb)]));
    }
    RecoveryReport report;
    if (b.norm() == 0.0) return report;

    // coordinate table in a rotated frame: t_j(k, l) = <W, u^k conj(u)^l>,
    // u = (U z)_j
    auto coordinate_table = [&](const Eigen::MatrixXcd& U, int j) {
        Eigen::MatrixXcd t(K_rows + 1, L_cols + 1);
        if (W.is_atomic()) {
            const auto zs = W.complex_points();
            const auto& ms = W.atomic().masses;
            std::vector<Complex> u(zs.size(), Complex(0.0, 0.0));
            for (size_t qq = 0; qq < zs.size(); ++qq)
                for (int i = 0; i < d; ++i) u[qq] += U(j, i) * zs[qq][static_cast<size_t>(i)];
            for (int k = 0; k <= K_rows; ++k)
                for (int l = 0; l <= L_cols; ++l) {
                    Complex s = 0.0;
                    for (size_t qq = 0; qq < u.size(); ++qq) {
                        Complex v = ms[qq];
                        for (int e = 0; e < k; ++e) v *= u[qq];
                        for (int e = 0; e < l; ++e) v *= std::conj(u[qq]);
                        s += v;
                    }
                    t(k, l) = s;
                }
            return t;
        }
        // general path through the pairing engine
        BiPolynomial u = BiPolynomial::zero(d);
        for (int i = 0; i < d; ++i)
            u = u + BiPolynomial::variable(d, i) * U(j, i);
        std::vector<BiPolynomial> upow{BiPolynomial::constant(d, 1.0)};
        for (int k = 1; k <= K_rows; ++k)
            upow.push_back(multiply(upow.back(), u));
        std::vector<BiPolynomial> ubpow{BiPolynomial::constant(d, 1.0)};
        const BiPolynomial ub = u.conjugated();
        for (int l = 1; l <= L_cols; ++l)
            ubpow.push_back(multiply(ubpow.back(), ub));
        for (int k = 0; k <= K_rows; ++k)
            for (int l = 0; l <= L_cols; ++l)
                t(k, l) = pair(W, multiply(upow[static_cast<size_t>(k)],
                                           ubpow[static_cast<size_t>(l)]));
        return t;
    };

    const int max_attempts = 4;  // identity plus up to 3 unitary retries
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Eigen::MatrixXcd U;
        if (attempt == 0) {
            U = Eigen::MatrixXcd::Identity(d, d);
        } else {
            Eigen::MatrixXcd G(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) G(r, c) = Complex(rng.normal(), rng.normal());
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
            U = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
        }
        std::vector<std::vector<Complex>> coord_support(static_cast<size_t>(d));
        bool degenerate = false;
        for (int j = 0; j < d; ++j) {
            coord_support[static_cast<size_t>(j)] =
                table_support(coordinate_table(U, j), m_bound, order_bound);
            if (coord_support[static_cast<size_t>(j)].empty()) {
                degenerate = true;
                break;
            }
        }
        if (degenerate) continue;

        // Cartesian grid in the rotated frame, mapped back by U^H
        std::vector<std::vector<Complex>> grid;
        std::vector<size_t> idx(static_cast<size_t>(d), 0);
        while (true) {
            Eigen::VectorXcd ghat(d);
            for (int j = 0; j < d; ++j)
                ghat(j) = coord_support[static_cast<size_t>(j)][idx[static_cast<size_t>(j)]];
            const Eigen::VectorXcd g = U.adjoint() * ghat;
            grid.push_back(std::vector<Complex>(g.data(), g.data() + d));
            int axis = d - 1;
            while (axis >= 0) {
                if (++idx[static_cast<size_t>(axis)] <
                    coord_support[static_cast<size_t>(axis)].size())
                    break;
                idx[static_cast<size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
        }

        const auto gammas = multid_gammas(d, order_bound);
        const int per = static_cast<int>(gammas.size());
        const Eigen::MatrixXcd A = design_matrix_multid(grid, order_bound, alphas);
        const Eigen::VectorXcd x = solve_ls(A, b);
        std::vector<double> norms(grid.size(), 0.0);
        for (size_t i = 0; i < grid.size(); ++i)
            for (int g = 0; g < per; ++g)
                norms[i] += std::abs(x(static_cast<int>(i) * per + g));
        const double nmax = *std::max_element(norms.begin(), norms.end());
        std::vector<std::vector<Complex>> kept;
        for (size_t i = 0; i < grid.size(); ++i)
            if (norms[i] >= kPruneTol * nmax) kept.push_back(grid[i]);
        if (kept.empty() || static_cast<int>(kept.size()) > m_bound) continue;

        MultiFit fit = polish_multid(std::move(kept), order_bound, b, alphas);
        if (!(fit.residual < kResidualTol)) continue;

        for (size_t i = 0; i < fit.points.size(); ++i) {
            report.support.push_back(fit.points[i]);
            DifferentialOperator L;
            for (int g = 0; g < per; ++g) {
                const Complex c = fit.coeffs(static_cast<int>(i) * per + g);
                if (c != Complex(0.0, 0.0))
                    L.add_term(gammas[static_cast<size_t>(g)], c);
            }
            report.operators.push_back(std::move(L));
        }
        report.rank_used = static_cast<int>(fit.points.size());
        report.moment_residual = fit.residual;
        return report;
    }
    throw RecoveryError("recovery failed");
}

// ------------------------------------------------------------------- Cauchy

Complex cauchy_transform(const Weight& W, Complex z) {
    if (W.ambient().kind != SpaceKind::ComplexSpace || W.ambient().dim != 1)
        throw DimensionError("cauchy_transform expects a weight over C^1");
    const double pi = 3.14159265358979323846;
    if (W.is_atomic() || W.is_point_distribution()) {
        const auto zs = W.complex_points();
        for (const auto& w : zs)
            if (std::abs(z - w[0]) <= 1e-6)
                throw ValidationError(
                    "cauchy_transform: evaluation point too near the support");
        Complex total = 0.0;
        if (W.is_atomic()) {
            const auto& ms = W.atomic().masses;
            for (size_t j = 0; j < zs.size(); ++j)
                total += ms[j] / (pi * (z - zs[j][0]));
            return total;
        }
        const auto& ops = W.point_distribution().operators;
        for (size_t j = 0; j < zs.size(); ++j) {
            const Complex u = z - zs[j][0];
            for (const auto& [g, c] : ops[j].terms()) {
                const int a = g[0], bq = g[1];
                // d_x^a d_y^b (1/(pi u)) = (a+b)! i^b u^{-(a+b+1)} / pi
                Complex val = factorial(a + bq) / pi;
                val *= std::pow(Complex(0.0, 1.0), bq);
                val /= std::pow(u, a + bq + 1);
                total += c * val;
            }
        }
        return total;
    }
    if (W.is_density()) {
        const auto& de = W.density();
        auto rx = gauss_legendre_on(de.quadrature_order, de.box.intervals[0].first,
                                    de.box.intervals[0].second);
        auto ry = gauss_legendre_on(de.quadrature_order, de.box.intervals[1].first,
                                    de.box.intervals[1].second);
        Complex total = 0.0;
        std::vector<double> x(2);
        for (size_t i = 0; i < rx.nodes.size(); ++i)
            for (size_t j = 0; j < ry.nodes.size(); ++j) {
                x[0] = rx.nodes[i];
                x[1] = ry.nodes[j];
                const Complex w(x[0], x[1]);
                total += rx.weights[i] * ry.weights[j] * de.evaluate(x) /
                         (pi * (z - w));
            }
        return total;
    }
    throw UnsupportedFamilyError("cauchy_transform: unsupported weight family");
}

Complex report_moment(const RecoveryReport& report, const MultiIndex& alpha,
                      const MultiIndex& beta) {
    Complex total = 0.0;
    for (size_t i = 0; i < report.support.size(); ++i) {
        for (const auto& [g, c] : report.operators[i].terms())
            total += c * op_moment_multid(alpha, beta, g, report.support[i]);
    }
    return total;
}

}  // namespace finrank
