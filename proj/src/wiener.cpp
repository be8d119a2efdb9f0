#include "finrank/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finrank/errors.hpp"
#include "finrank/quadrature.hpp"

namespace finrank {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMergeTol = 1e-9;     // collision threshold for projected atoms
constexpr double kTailTol = 1e-9;      // acceptable relative Gaussian tail mass

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_xi_dim(const Weight& W, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != W.ambient().real_dim())
        throw DimensionError("fourier: frequency dimension mismatch");
}

// merged |mass|^2 sum of the projections x_j . zeta
double projected_atom_mass(const std::vector<double>& t,
                           const std::vector<Complex>& masses) {
    std::vector<size_t> order(t.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return t[a] < t[b]; });
    double total = 0.0;
    size_t i = 0;
    while (i < order.size()) {
        Complex mass = masses[order[i]];
        size_t j = i + 1;
        while (j < order.size() && t[order[j]] - t[order[j - 1]] < kMergeTol) {
            mass += masses[order[j]];
            ++j;
        }
        total += std::norm(mass);
        i = j;
    }
    return total;
}

void check_schedule(const std::vector<double>& R) {
    if (R.empty()) throw ValidationError("atom_mass: empty scale schedule");
    double prev = 0.0;
    for (double r : R) {
        if (!(r > prev))
            throw ValidationError("atom_mass: schedule must be positive increasing");
        prev = r;
    }
}

WienerEstimate finish_estimate(std::vector<double> schedule,
                               std::vector<double> values) {
    WienerEstimate est;
    est.R_schedule = std::move(schedule);
    est.values = std::move(values);
    est.limit = est.values.back();
    est.error_estimate =
        est.values.size() > 1
            ? std::abs(est.values.back() - est.values[est.values.size() - 2])
            : 0.0;
    return est;
}

double atomic_value(const std::vector<std::vector<double>>& pts,
                    const std::vector<Complex>& ms, double R) {
    Complex total = 0.0;
    for (size_t j = 0; j < pts.size(); ++j)
        for (size_t k = 0; k < pts.size(); ++k) {
            double d2 = 0.0;
            for (size_t i = 0; i < pts[j].size(); ++i) {
                const double d = pts[j][i] - pts[k][i];
                d2 += d * d;
            }
            total += ms[j] * std::conj(ms[k]) * std::exp(-R * R * d2 / 4.0);
        }
    return total.real();
}

// FT of a one-dimensional density at xi, by composite panels sized to the
// oscillation xi * (b - a); the weight's fixed quadrature order is not
// trusted at the large frequencies the scale schedule reaches.
Complex density_ft_1d(const Density& de, double xi) {
    const double a = de.box.intervals[0].first;
    const double b = de.box.intervals[0].second;
    const int panels =
        std::max(1, static_cast<int>(std::ceil(std::abs(xi) * (b - a) / 4.0)));
    Complex total = 0.0;
    std::vector<double> x(1);
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        const QuadratureRule rule = gauss_legendre_on(16, lo, hi);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            x[0] = rule.nodes[i];
            total += rule.weights[i] * de.evaluate(x) *
                     std::exp(Complex(0.0, -x[0] * xi));
        }
    }
    return total;
}

double density_value_1d(const Density& de, double R, double xi_max) {
    // Gaussian tail of the truncated |xi| <= Xi integral, relative to the
    // squared total variation bound on |FT W|
    const double tail = std::erfc(xi_max / R);
    if (!(tail <= kTailTol)) throw BandwidthError("bandwidth insufficient");
    const double a = de.box.intervals[0].first;
    const double b = de.box.intervals[0].second;
    const double xi_cut = std::min(xi_max, 6.5 * R);  // erfc(6.5) ~ 3e-20
    const double width = kPi / std::max(1.0, b - a);
    const int panels = std::max(1, static_cast<int>(std::ceil(xi_cut / width)));
    double total = 0.0;
    for (int side = -1; side <= 1; side += 2) {
        for (int p = 0; p < panels; ++p) {
            const double lo = xi_cut * p / panels;
            const double hi = xi_cut * (p + 1) / panels;
            const QuadratureRule rule = side < 0
                                            ? gauss_legendre_on(20, -hi, -lo)
                                            : gauss_legendre_on(20, lo, hi);
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                const double xi = rule.nodes[i];
                const double g = std::exp(-xi * xi / (R * R));
                total += rule.weights[i] * g * std::norm(density_ft_1d(de, xi));
            }
        }
    }
    return total / (R * std::sqrt(kPi));
}

double density_tv_mass(const Density& de) {
    double tv = 0.0;
    std::vector<QuadratureRule> rules;
    for (const auto& [lo, hi] : de.box.intervals)
        rules.push_back(gauss_legendre_on(de.quadrature_order, lo, hi));
    std::vector<size_t> idx(rules.size(), 0);
    std::vector<double> x(rules.size());
    while (true) {
        double w = 1.0;
        for (size_t ax = 0; ax < rules.size(); ++ax) {
            x[ax] = rules[ax].nodes[idx[ax]];
            w *= rules[ax].weights[idx[ax]];
        }
        tv += w * std::abs(de.evaluate(x));
        int ax = static_cast<int>(rules.size()) - 1;
        while (ax >= 0) {
            if (++idx[static_cast<size_t>(ax)] <
                rules[static_cast<size_t>(ax)].nodes.size())
                break;
            idx[static_cast<size_t>(ax)] = 0;
            --ax;
        }
        if (ax < 0) break;
    }
    return tv;
}

}  // namespace

std::string to_string(Discreteness v) {
    switch (v) {
        case Discreteness::Discrete: return "Discrete";
        case Discreteness::Continuous: return "Continuous";
        case Discreteness::Mixed: return "Mixed";
        default: return "Inconclusive";
    }
}

Complex fourier(const Weight& W, const std::vector<double>& xi) {
    check_xi_dim(W, xi);
    if (W.is_atomic()) {
        const auto& at = W.atomic();
        Complex total = 0.0;
        for (size_t j = 0; j < at.points.size(); ++j)
            total += at.masses[j] *
                     std::exp(Complex(0.0, -dot(at.points[j], xi)));
        return total;
    }
    if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        Complex total = 0.0;
        for (size_t j = 0; j < pd.points.size(); ++j) {
            const Complex osc = std::exp(Complex(0.0, -dot(pd.points[j], xi)));
            for (const auto& [gamma, c] : pd.operators[j].terms()) {
                Complex factor = 1.0;
                for (size_t ax = 0; ax < gamma.size(); ++ax)
                    for (int e = 0; e < gamma[ax]; ++e)
                        factor *= Complex(0.0, -xi[ax]);
                total += c * factor * osc;
            }
        }
        return total;
    }
    if (W.is_density()) {
        const auto& de = W.density();
        std::vector<QuadratureRule> rules;
        for (const auto& [lo, hi] : de.box.intervals)
            rules.push_back(gauss_legendre_on(de.quadrature_order, lo, hi));
        Complex total = 0.0;
        std::vector<size_t> idx(rules.size(), 0);
        std::vector<double> x(rules.size());
        while (true) {
            double w = 1.0;
            for (size_t ax = 0; ax < rules.size(); ++ax) {
                x[ax] = rules[ax].nodes[idx[ax]];
                w *= rules[ax].weights[idx[ax]];
            }
            total += w * de.evaluate(x) * std::exp(Complex(0.0, -dot(x, xi)));
            int ax = static_cast<int>(rules.size()) - 1;
            while (ax >= 0) {
                if (++idx[static_cast<size_t>(ax)] <
                    rules[static_cast<size_t>(ax)].nodes.size())
                    break;
                idx[static_cast<size_t>(ax)] = 0;
                --ax;
            }
            if (ax < 0) break;
        }
        return total;
    }
    const auto& fr = W.fourier_radial();
    const double r2 = dot(xi, xi);
    if (std::sqrt(r2) > fr.validity_radius)
        throw TruncationError("truncation exceeded");
    double value = 0.0, pow = 1.0;
    for (double a : fr.series) {
        value += a * pow;
        pow *= r2;
    }
    return value;
}

Weight project(const Weight& W, const std::vector<double>& zeta) {
    if (W.ambient().kind != SpaceKind::RealSpace)
        throw DimensionError("project expects a weight over a real space");
    if (static_cast<int>(zeta.size()) != W.ambient().dim)
        throw DimensionError("project: direction dimension mismatch");
    if (std::abs(std::sqrt(dot(zeta, zeta)) - 1.0) > 1e-12)
        throw ValidationError("project: direction must be a unit vector");
    if (!W.is_atomic())
        throw UnsupportedFamilyError("project: only atomic weights project");
    const auto& at = W.atomic();
    std::vector<double> t(at.points.size());
    for (size_t j = 0; j < t.size(); ++j) t[j] = dot(at.points[j], zeta);
    std::vector<size_t> order(t.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return t[a] < t[b]; });
    Atomic out;
    size_t i = 0;
    while (i < order.size()) {
        Complex mass = at.masses[order[i]];
        double pos = t[order[i]];
        size_t j = i + 1;
        while (j < order.size() && t[order[j]] - t[order[j - 1]] < kMergeTol) {
            mass += at.masses[order[j]];
            ++j;
        }
        out.points.push_back({pos});
        out.masses.push_back(mass);
        i = j;
    }
    return Weight(real_space(1), std::move(out));
}

std::vector<double> default_R_schedule() { return {2, 4, 8, 16, 32, 64}; }

WienerEstimate atom_mass(const Weight& W, const std::vector<double>& R_schedule,
                         double xi_max) {
    check_schedule(R_schedule);
    std::vector<double> values;
    if (W.is_atomic()) {
        const auto& at = W.atomic();
        for (double R : R_schedule)
            values.push_back(atomic_value(at.points, at.masses, R));
        return finish_estimate(R_schedule, std::move(values));
    }
    if (W.is_density()) {
        if (W.ambient().real_dim() != 1)
            throw UnsupportedFamilyError(
                "atom_mass: density quadrature implemented in dimension 1 only");
        const auto& de = W.density();
        for (double R : R_schedule)
            values.push_back(density_value_1d(de, R, xi_max));
        return finish_estimate(R_schedule, std::move(values));
    }
    throw UnsupportedFamilyError(
        "atom_mass supports atomic and density weights");
}

WienerEstimate atom_mass(const Weight& W) {
    return atom_mass(W, default_R_schedule());
}

std::vector<std::vector<double>> sphere_directions(int D, int n) {
    if (n < 1) throw ValidationError("sphere_directions: need n >= 1");
    std::vector<std::vector<double>> dirs;
    if (D == 2) {
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * kPi * i / n;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    if (D == 3) {
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / n;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * i;
            dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        return dirs;
    }
    throw DimensionError("sphere_directions: D must be 2 or 3");
}

SphereAverageResult sphere_average_check(const Weight& W, int n_nodes) {
    const int D = W.ambient().dim;
    if (W.ambient().kind != SpaceKind::RealSpace || (D != 2 && D != 3))
        throw DimensionError("sphere_average_check needs RealSpace(2 or 3)");
    if (!W.is_atomic())
        throw UnsupportedFamilyError("sphere_average_check needs an atomic weight");
    const auto& at = W.atomic();
    SphereAverageResult out;
    for (Complex c : at.masses) out.direct += std::norm(c);
    if (at.points.empty()) return out;
    double total = 0.0;
    std::vector<double> t(at.points.size());
    for (const auto& zeta : sphere_directions(D, n_nodes)) {
        for (size_t j = 0; j < at.points.size(); ++j)
            t[j] = dot(at.points[j], zeta);
        total += projected_atom_mass(t, at.masses);
    }
    out.average = total / n_nodes;
    return out;
}

DiscretenessVerdict classify_discreteness(const Weight& W, int n_directions,
                                          std::uint64_t seed) {
    if (n_directions < 10)
        throw ValidationError("classify_discreteness: need >= 10 directions");
    DiscretenessVerdict verdict;
    if (W.is_zero()) {
        verdict.verdict = Discreteness::Continuous;
        return verdict;
    }
    const Weight& V =
        (W.ambient().kind == SpaceKind::ComplexSpace) ? as_real_space(W) : W;
    const std::vector<double> schedule{2, 4, 8, 16, 32, 64, 128};

    // total-variation scale and, for atomic weights, the exact proxy
    double scale = 0.0, proxy = 0.0;
    bool have_proxy = false;
    if (V.is_atomic()) {
        double tv = 0.0;
        for (Complex c : V.atomic().masses) {
            tv += std::abs(c);
            proxy += std::norm(c);
        }
        scale = tv * tv;
        have_proxy = true;
    } else if (V.is_density()) {
        const double tv = density_tv_mass(V.density());
        scale = tv * tv;
    } else {
        throw UnsupportedFamilyError(
            "classify_discreteness supports atomic and density weights");
    }

    std::vector<double> estimates;
    estimates.push_back(atom_mass(V, schedule).limit);
    verdict.atom_mass = estimates.front();
    if (V.is_atomic() && V.ambient().dim >= 2) {
        Rng rng(seed);
        const int D = V.ambient().dim;
        for (int k = 0; k < n_directions; ++k) {
            std::vector<double> zeta(static_cast<size_t>(D));
            double nrm = 0.0;
            while (nrm < 1e-6) {
                nrm = 0.0;
                for (auto& z : zeta) {
                    z = rng.normal();
                    nrm += z * z;
                }
                nrm = std::sqrt(nrm);
            }
            for (auto& z : zeta) z /= nrm;
            estimates.push_back(atom_mass(project(V, zeta), schedule).limit);
            ++verdict.direction_samples;
        }
    }

    int agree = 0, near_zero = 0;
    for (double est : estimates) {
        if (have_proxy && std::abs(est - proxy) <= 0.05 * proxy) ++agree;
        if (est <= 0.05 * scale) ++near_zero;
    }
    const int n = static_cast<int>(estimates.size());
    if (have_proxy && agree == n)
        verdict.verdict = Discreteness::Discrete;
    else if (near_zero == n)
        verdict.verdict = Discreteness::Continuous;
    else if (agree + near_zero >= n && agree > 0 && near_zero > 0)
        verdict.verdict = Discreteness::Mixed;
    else
        verdict.verdict = Discreteness::Inconclusive;
    return verdict;
}

}  // namespace finrank
