#include "finrank/moments.hpp"

#include <algorithm>
#include <cmath>

namespace finrank {

int HarmonicBasis::count_up_to(int k_max) const {
    int n = 0;
    for (int k = 0; k <= k_max && k < static_cast<int>(by_degree.size()); ++k)
        n += static_cast<int>(by_degree[static_cast<size_t>(k)].size());
    return n;
}

const RealPolynomial& HarmonicBasis::at(int degree, int index) const {
    return by_degree.at(static_cast<size_t>(degree)).at(static_cast<size_t>(index));
}

MomentMatrix analytic_moment_matrix(const Weight& W, int N) {
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("analytic_moment_matrix expects a complex-space weight");
    if (N < 0) throw ValidationError("degree cutoff must be >= 0");
    const int d = W.ambient().dim;
    MomentMatrix M;
    M.basis_kind = BasisKind::MonomialBi;
    M.degree_cutoff = N;
    M.mono_labels = indices_up_to(d, N);
    const int n = static_cast<int>(M.mono_labels.size());
    M.entries.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            M.entries(r, c) =
                pair(W, BiPolynomial::monomial(d, M.mono_labels[static_cast<size_t>(r)],
                                               M.mono_labels[static_cast<size_t>(c)]));
    return M;
}

HarmonicBasis harmonic_basis(int D, int k_max) {
    if (D < 2) throw DimensionError("harmonic_basis requires dimension >= 2");
    if (k_max < 0) throw ValidationError("k_max must be >= 0");
    HarmonicBasis basis;
    basis.dim = D;
    basis.by_degree.resize(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const auto monos = indices_of_degree(D, k);
        const int nk = static_cast<int>(monos.size());
        auto& level = basis.by_degree[static_cast<size_t>(k)];
        if (k < 2) {
            // Laplacian vanishes identically on degrees 0 and 1
            for (const auto& g : monos)
                level.push_back(RealPolynomial::monomial(D, g));
            continue;
        }
        const auto monos_lo = indices_of_degree(D, k - 2);
        const int nlo = static_cast<int>(monos_lo.size());
        // Laplacian as a linear map from degree-k coefficients to degree-(k-2)
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nlo, nk);
        for (int c = 0; c < nk; ++c) {
            const auto& g = monos[static_cast<size_t>(c)];
            for (int j = 0; j < D; ++j) {
                const int e = g[static_cast<size_t>(j)];
                if (e < 2) continue;
                MultiIndex g2 = g;
                g2[static_cast<size_t>(j)] = e - 2;
                const auto it =
                    std::find(monos_lo.begin(), monos_lo.end(), g2);
                const int r = static_cast<int>(it - monos_lo.begin());
                L(r, c) += static_cast<double>(e) * (e - 1);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() ? sv(0) : 0.0;
        const Eigen::MatrixXd V = svd.matrixV();
        for (int c = 0; c < V.cols(); ++c) {
            const double s = c < sv.size() ? sv(c) : 0.0;
            if (s > 1e-10 * std::max(smax, 1.0)) continue;
            RealPolynomial p(D);
            for (int r = 0; r < nk; ++r)
                if (std::abs(V(r, c)) > 0.0)
                    p.add_term(monos[static_cast<size_t>(r)], V(r, c));
            level.push_back(std::move(p));
        }
    }
    return basis;
}

MomentMatrix harmonic_moment_matrix(const Weight& W, int k_max) {
    if (W.ambient().kind != SpaceKind::RealSpace)
        throw DimensionError("harmonic_moment_matrix expects a real-space weight");
    const int D = W.ambient().dim;
    const HarmonicBasis basis = harmonic_basis(D, k_max);
    MomentMatrix M;
    M.basis_kind = BasisKind::Harmonic;
    M.degree_cutoff = k_max;
    std::vector<const RealPolynomial*> flat;
    for (int k = 0; k <= k_max; ++k)
        for (size_t i = 0; i < basis.by_degree[static_cast<size_t>(k)].size(); ++i) {
            M.harm_labels.push_back({k, static_cast<int>(i)});
            flat.push_back(&basis.by_degree[static_cast<size_t>(k)][i]);
        }
    const int n = static_cast<int>(flat.size());
    M.entries.resize(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            // basis polynomials have real coefficients; conjugation is identity
            M.entries(r, c) = pair(W, multiply(*flat[static_cast<size_t>(r)],
                                               *flat[static_cast<size_t>(c)]));
        }
    }
    return M;
}

MomentMatrix twist(const Weight& W, const BiPolynomial& g, int N) {
    if (!g.is_holomorphic())
        throw ValidationError("twist requires a holomorphic polynomial");
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("twist expects a complex-space weight");
    const int d = W.ambient().dim;
    if (g.dim() != d) throw DimensionError("twist polynomial dimension mismatch");
    const BiPolynomial gg = multiply(g, g.conjugated());
    MomentMatrix M;
    M.basis_kind = BasisKind::MonomialBi;
    M.degree_cutoff = N;
    M.mono_labels = indices_up_to(d, N);
    const int n = static_cast<int>(M.mono_labels.size());
    M.entries.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const BiPolynomial q = multiply(
                gg, BiPolynomial::monomial(d, M.mono_labels[static_cast<size_t>(r)],
                                           M.mono_labels[static_cast<size_t>(c)]));
            M.entries(r, c) = pair(W, q);
        }
    return M;
}

Weight project_forget(const Weight& W, int j) {
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("project_forget expects a complex-space weight");
    const int d = W.ambient().dim;
    if (d < 2) throw DimensionError("project_forget requires dimension >= 2");
    if (j < 0 || j >= d) throw DimensionError("projected coordinate out of range");

    auto drop_point = [&](const std::vector<double>& p) {
        std::vector<double> q;
        q.reserve(p.size() - 2);
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            q.push_back(p[static_cast<size_t>(2 * i)]);
            q.push_back(p[static_cast<size_t>(2 * i + 1)]);
        }
        return q;
    };
    auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };

    if (W.is_atomic()) {
        const auto& at = W.atomic();
        std::vector<std::vector<double>> pts;
        std::vector<Complex> ms;
        for (size_t q = 0; q < at.points.size(); ++q) {
            const auto p = drop_point(at.points[q]);
            bool merged = false;
            for (size_t i = 0; i < pts.size(); ++i) {
                if (dist(pts[i], p) < 1e-9) {
                    ms[i] += at.masses[q];
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                pts.push_back(p);
                ms.push_back(at.masses[q]);
            }
        }
        return Weight(complex_space(d - 1), Atomic{std::move(pts), std::move(ms)});
    }
    if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        std::vector<std::vector<double>> pts;
        std::vector<DifferentialOperator> ops;
        for (size_t q = 0; q < pd.points.size(); ++q) {
            const auto p = drop_point(pd.points[q]);
            // derivatives along the dropped coordinate annihilate functions
            // pulled back through the projection
            DifferentialOperator L;
            for (const auto& [g, c] : pd.operators[q].terms()) {
                if (g[static_cast<size_t>(2 * j)] != 0 ||
                    g[static_cast<size_t>(2 * j + 1)] != 0)
                    continue;
                MultiIndex g2;
                g2.reserve(g.size() - 2);
                for (int i = 0; i < d; ++i) {
                    if (i == j) continue;
                    g2.push_back(g[static_cast<size_t>(2 * i)]);
                    g2.push_back(g[static_cast<size_t>(2 * i + 1)]);
                }
                L.add_term(g2, c);
            }
            bool merged = false;
            for (size_t i = 0; i < pts.size(); ++i) {
                if (dist(pts[i], p) < 1e-9) {
                    for (const auto& [g, c] : L.terms()) ops[i].add_term(g, c);
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                pts.push_back(p);
                ops.push_back(std::move(L));
            }
        }
        return Weight(complex_space(d - 1),
                      PointDistribution{std::move(pts), std::move(ops)});
    }
    throw UnsupportedFamilyError("project_forget supports point-type weights");
}

MomentMatrix coordinate_submatrix(const Weight& W, int j, int N) {
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("coordinate_submatrix expects a complex-space weight");
    const int d = W.ambient().dim;
    if (d < 2) throw DimensionError("coordinate_submatrix requires dimension >= 2");
    if (j < 0 || j >= d) throw DimensionError("fixed coordinate out of range");
    MomentMatrix M;
    M.basis_kind = BasisKind::MonomialBi;
    M.degree_cutoff = N;
    M.mono_labels = indices_up_to(d - 1, N);
    auto lift = [&](const MultiIndex& a) {
        MultiIndex full(static_cast<size_t>(d), 0);
        int src = 0;
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            full[static_cast<size_t>(i)] = a[static_cast<size_t>(src++)];
        }
        return full;
    };
    const int n = static_cast<int>(M.mono_labels.size());
    M.entries.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            M.entries(r, c) =
                pair(W, BiPolynomial::monomial(
                            d, lift(M.mono_labels[static_cast<size_t>(r)]),
                            lift(M.mono_labels[static_cast<size_t>(c)])));
    return M;
}

}  // namespace finrank
