#include "finrank/ensemble.hpp"

#include <cmath>

#include "finrank/errors.hpp"

namespace finrank {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

Complex random_mass(Rng& rng, double lo, double hi) {
    const double r = rng.uniform(lo, hi);
    const double th = rng.uniform(0.0, kTwoPi);
    return Complex(r * std::cos(th), r * std::sin(th));
}

// rejection sampling of separated point sets; coords fills one point
std::vector<std::vector<double>> separated_points(
    Rng& rng, int count, double separation,
    const std::function<std::vector<double>(Rng&)>& coords) {
    std::vector<std::vector<double>> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 100000)
            throw ValidationError("ensemble: separation unattainable");
        std::vector<double> p = coords(rng);
        bool ok = true;
        for (const auto& q : pts) {
            double d2 = 0.0;
            for (size_t i = 0; i < p.size(); ++i)
                d2 += (p[i] - q[i]) * (p[i] - q[i]);
            if (d2 < separation * separation) {
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<double> disk_point(Rng& rng) {
    while (true) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        if (x * x + y * y <= 1.0) return {x, y};
    }
}

}  // namespace

Weight random_atomic_c1(Rng& rng, const AtomicEnsembleParams& params) {
    const int m = rng.uniform_int(params.min_atoms, params.max_atoms);
    Atomic at;
    at.points = separated_points(rng, m, params.separation, disk_point);
    for (int j = 0; j < m; ++j)
        at.masses.push_back(random_mass(rng, params.min_mass, params.max_mass));
    return Weight(complex_space(1), std::move(at));
}

Weight random_atomic_cd(Rng& rng, int d, int max_atoms, double separation) {
    if (d < 1) throw DimensionError("random_atomic_cd: d must be >= 1");
    const int m = rng.uniform_int(1, max_atoms);
    auto coords = [d](Rng& r) {
        std::vector<double> p(static_cast<size_t>(2 * d));
        for (auto& c : p) c = r.uniform(-1.0, 1.0);
        return p;
    };
    Atomic at;
    at.points = separated_points(rng, m, separation, coords);
    for (int j = 0; j < m; ++j) at.masses.push_back(random_mass(rng, 0.1, 1.0));
    return Weight(complex_space(d), std::move(at));
}

Weight random_atomic_real(Rng& rng, int D, int min_atoms, int max_atoms,
                          double separation) {
    if (D < 1) throw DimensionError("random_atomic_real: D must be >= 1");
    const int m = rng.uniform_int(min_atoms, max_atoms);
    auto coords = [D](Rng& r) {
        std::vector<double> p(static_cast<size_t>(D));
        for (auto& c : p) c = r.uniform(-1.0, 1.0);
        return p;
    };
    Atomic at;
    at.points = separated_points(rng, m, separation, coords);
    for (int j = 0; j < m; ++j) at.masses.push_back(random_mass(rng, 0.1, 1.0));
    return Weight(real_space(D), std::move(at));
}

Weight random_point_distribution_c1(Rng& rng, int max_points, int max_order) {
    const int n = rng.uniform_int(1, max_points);
    PointDistribution pd;
    pd.points = separated_points(rng, n, 0.1, disk_point);
    for (int j = 0; j < n; ++j) {
        const int order = rng.uniform_int(0, max_order);
        DifferentialOperator L;
        for (int total = 0; total <= order; ++total)
            for (int p = total; p >= 0; --p)
                L.add_term({p, total - p}, random_mass(rng, 0.1, 1.0));
        pd.operators.push_back(std::move(L));
    }
    return Weight(complex_space(1), std::move(pd));
}

BiPolynomial random_holomorphic_1d(Rng& rng, int max_degree) {
    const int deg = rng.uniform_int(0, max_degree);
    BiPolynomial g = BiPolynomial::zero(1);
    for (int k = 0; k < deg; ++k)
        g.add_term({k}, {0}, Complex(rng.normal(), rng.normal()));
    g.add_term({deg}, {0}, random_mass(rng, 0.1, 1.0));
    return g;
}

Weight circle_minus_delta(int n) {
    if (n < 1) throw ValidationError("circle_minus_delta: n must be >= 1");
    Atomic at;
    const double w = kTwoPi / n;
    for (int j = 0; j < n; ++j) {
        const double th = kTwoPi * j / n;
        at.points.push_back({std::cos(th), std::sin(th)});
        at.masses.push_back(w);
    }
    at.points.push_back({0.0, 0.0});
    at.masses.push_back(-kTwoPi);
    return Weight(complex_space(1), std::move(at));
}

Weight collision_pair() {
    Atomic at;
    at.points = {{1.0, 0.0, 1.0, 0.0}, {-1.0, 0.0, 1.0, 0.0}};
    at.masses = {1.0, -1.0};
    return Weight(complex_space(2), std::move(at));
}

}  // namespace finrank
