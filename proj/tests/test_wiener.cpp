#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "finrank/quadrature.hpp"
#include "finrank/wiener.hpp"

using namespace finrank;

namespace {

const double kPi = 3.14159265358979323846;

Weight atoms_r(int D, std::vector<std::vector<double>> pts,
               std::vector<Complex> ms) {
    return Weight(real_space(D), Atomic{std::move(pts), std::move(ms)});
}

Weight uniform01() {
    Box box;
    box.intervals = {{0.0, 1.0}};
    return uniform_box_density(real_space(1), box, 1.0);
}

// R^{-1} int h(xi/R) |FT W|^2 dxi computed straight from fourier(), as an
// independent check on the atomic closed form
double direct_value_1d(const Weight& W, double R) {
    const double cut = 6.5 * R;
    const int panels = std::max(1, static_cast<int>(std::ceil(cut / (kPi / 2))));
    double total = 0.0;
    for (int side = -1; side <= 1; side += 2)
        for (int p = 0; p < panels; ++p) {
            const double lo = cut * p / panels, hi = cut * (p + 1) / panels;
            const QuadratureRule rule = side < 0 ? gauss_legendre_on(20, -hi, -lo)
                                                 : gauss_legendre_on(20, lo, hi);
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                const double xi = rule.nodes[i];
                total += rule.weights[i] * std::exp(-xi * xi / (R * R)) *
                         std::norm(fourier(W, {xi}));
            }
        }
    return total / (R * std::sqrt(kPi));
}

// scale profile of the uniform density on [0, 1]
double uniform01_value(double R) {
    return 2.0 * std::sqrt(kPi) / R -
           (4.0 / (R * R)) * (1.0 - std::exp(-R * R / 4.0));
}

}  // namespace

TEST_SUITE("wiener") {

TEST_CASE("fourier transform closed forms") {
    const Weight d0 = atoms_r(1, {{0.0}}, {Complex(1.0)});
    for (double xi : {0.0, 1.3, -2.7})
        CHECK(fourier(d0, {xi}) == Complex(1.0));

    const Weight pair1 = atoms_r(1, {{1.0}, {-1.0}}, {Complex(0.5), Complex(0.5)});
    for (double xi : {0.0, 0.7, 2.9})
        CHECK(std::abs(fourier(pair1, {xi}) - std::cos(xi)) < 1e-15);

    Box box;
    box.intervals = {{-1.0, 1.0}};
    const Weight u = uniform_box_density(real_space(1), box, 1.0);
    CHECK(std::abs(fourier(u, {0.0}) - Complex(1.0)) < 1e-12);
    for (double xi : {0.5, 1.0, 3.0})
        CHECK(std::abs(fourier(u, {xi}) - std::sin(xi) / xi) < 1e-10);

    DifferentialOperator L;
    L.add_term({1}, 1.0);
    const Weight dpd(real_space(1), PointDistribution{{{0.0}}, {L}});
    CHECK(std::abs(fourier(dpd, {1.7}) - Complex(0.0, -1.7)) < 1e-15);

    CHECK_THROWS_AS(fourier(d0, {1.0, 2.0}), DimensionError);
}

TEST_CASE("radial series transforms evaluate inside their validity radius") {
    FourierRadial fr;
    fr.series = {1.0, -0.25};
    fr.validity_radius = 2.0;
    const Weight W(real_space(2), fr);
    CHECK(std::abs(fourier(W, {1.0, 0.0}) - Complex(0.75)) < 1e-15);
    CHECK(std::abs(fourier(W, {1.2, 0.9}) - Complex(1.0 - 0.25 * 2.25)) < 1e-15);
    CHECK_THROWS_AS(fourier(W, {3.0, 0.0}), TruncationError);
}

TEST_CASE("projection pushes atoms onto the line") {
    const Weight W = atoms_r(2, {{1.0, 0.0}}, {Complex(1.0)});
    const Weight P = project(W, {0.0, 1.0});
    CHECK(P.ambient() == real_space(1));
    REQUIRE(P.atomic().points.size() == 1);
    CHECK(P.atomic().points[0][0] == 0.0);
    CHECK(P.atomic().masses[0] == Complex(1.0));
}

TEST_CASE("colliding projections cancel by mass") {
    const Weight W =
        atoms_r(2, {{1.0, 0.0}, {-1.0, 0.0}}, {Complex(1.0), Complex(-1.0)});
    CHECK(project(W, {0.0, 1.0}).is_zero());
}

TEST_CASE("projection commutes with the fourier transform") {
    const Weight W = atoms_r(
        3, {{0.3, -0.7, 0.2}, {1.1, 0.4, -0.9}, {-0.6, 0.8, 0.5}},
        {Complex(1.0, 0.5), Complex(-0.7), Complex(0.2, -1.1)});
    std::vector<double> zeta{2.0, -1.0, 3.0};
    double nrm = 0.0;
    for (double z : zeta) nrm += z * z;
    for (double& z : zeta) z /= std::sqrt(nrm);
    const Weight P = project(W, zeta);
    for (int i = 0; i < 20; ++i) {
        const double t = -5.0 + 0.5 * i;
        const Complex lhs = fourier(P, {t});
        const Complex rhs =
            fourier(W, {t * zeta[0], t * zeta[1], t * zeta[2]});
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("projection rejects bad inputs") {
    const Weight W = atoms_r(2, {{1.0, 0.0}}, {Complex(1.0)});
    CHECK_THROWS_AS(project(W, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(project(W, {1.0}), DimensionError);
    CHECK_THROWS_AS(project(uniform01(), {1.0}), UnsupportedFamilyError);
    const Weight C(complex_space(1), Atomic{{{0.0, 0.0}}, {Complex(1.0)}});
    CHECK_THROWS_AS(project(C, {1.0, 0.0}), DimensionError);
}

TEST_CASE("atom mass of a single point mass is one at every scale") {
    const Weight W = atoms_r(2, {{0.3, -0.7}}, {Complex(1.0)});
    const WienerEstimate est = atom_mass(W, {2, 4, 8, 16});
    for (double v : est.values) CHECK(v == 1.0);
    CHECK(est.limit == 1.0);
    CHECK(est.error_estimate == 0.0);
}

TEST_CASE("two half masses converge monotonically to one half") {
    const Weight W = atoms_r(1, {{1.0}, {-1.0}}, {Complex(0.5), Complex(0.5)});
    const WienerEstimate est = atom_mass(W, {2, 4, 8, 16, 32});
    CHECK(std::abs(est.limit - 0.5) < 1e-6);
    for (size_t i = 1; i < est.values.size(); ++i)
        CHECK(std::abs(est.values[i] - 0.5) <= std::abs(est.values[i - 1] - 0.5));
    // singleton schedules report no error estimate
    CHECK(atom_mass(W, {4}).error_estimate == 0.0);
    // default schedule runs 2 through 64
    CHECK(atom_mass(W).R_schedule == std::vector<double>{2, 4, 8, 16, 32, 64});
}

TEST_CASE("atomic closed form agrees with direct quadrature") {
    const Weight W = atoms_r(1, {{1.0}, {-1.0}, {0.4}},
                             {Complex(0.5), Complex(0.5), Complex(-0.3, 0.2)});
    const WienerEstimate est = atom_mass(W, {2, 4, 8});
    for (size_t i = 0; i < est.values.size(); ++i)
        CHECK(std::abs(est.values[i] - direct_value_1d(W, est.R_schedule[i])) <
              1e-8);
}

TEST_CASE("density values match the closed-form scale profile") {
    const WienerEstimate est = atom_mass(uniform01(), {8, 16, 32, 64});
    for (size_t i = 0; i < est.values.size(); ++i)
        CHECK(std::abs(est.values[i] - uniform01_value(est.R_schedule[i])) < 1e-8);
    // O(1/R) decay, not yet below any fixed cutoff at moderate R
    for (size_t i = 1; i < est.values.size(); ++i)
        CHECK(est.values[i] < est.values[i - 1]);
}

TEST_CASE("density quadrature reports insufficient bandwidth") {
    CHECK_THROWS_AS(atom_mass(uniform01(), {1024}), BandwidthError);
    CHECK_NOTHROW(atom_mass(uniform01(), {64}, 2048.0));
}

TEST_CASE("atom mass rejects bad schedules and families") {
    const Weight W = atoms_r(1, {{0.0}}, {Complex(1.0)});
    CHECK_THROWS_AS(atom_mass(W, {}), ValidationError);
    CHECK_THROWS_AS(atom_mass(W, {2, 2}), ValidationError);
    CHECK_THROWS_AS(atom_mass(W, {-1, 2}), ValidationError);

    Box sq;
    sq.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    const Weight u2 = uniform_box_density(real_space(2), sq, 1.0);
    CHECK_THROWS_AS(atom_mass(u2, {2, 4}), UnsupportedFamilyError);

    DifferentialOperator L;
    L.add_term({1}, 1.0);
    const Weight pd(real_space(1), PointDistribution{{{0.0}}, {L}});
    CHECK_THROWS_AS(atom_mass(pd, {2, 4}), UnsupportedFamilyError);
}

TEST_CASE("sphere averages of projected masses match the direct sum") {
    const Weight one = atoms_r(2, {{1.0, 1.0}}, {Complex(1.0)});
    const SphereAverageResult r1 = sphere_average_check(one);
    CHECK(r1.direct == 1.0);
    CHECK(r1.average == doctest::Approx(1.0).epsilon(1e-12));

    const Weight two = atoms_r(3, {{0.3, 0.7, -0.2}, {-0.5, 0.1, 0.4}},
                               {Complex(1.0), Complex(1.0)});
    const SphereAverageResult r2 = sphere_average_check(two);
    CHECK(r2.direct == 2.0);
    CHECK(std::abs(r2.average - 2.0) < 0.02);

    // signed masses: total mass zero, mass functional still sees both atoms
    const Weight signed2 =
        atoms_r(2, {{1.0, 0.0}, {0.0, 1.0}}, {Complex(1.0), Complex(-1.0)});
    const SphereAverageResult r3 = sphere_average_check(signed2);
    CHECK(r3.direct == 2.0);
    CHECK(std::abs(r3.average - 2.0) < 0.02);
}

TEST_CASE("sphere average rejects unsupported inputs") {
    CHECK_THROWS_AS(sphere_average_check(atoms_r(1, {{0.0}}, {Complex(1.0)})),
                    DimensionError);
    Box sq;
    sq.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(sphere_average_check(uniform_box_density(real_space(2), sq, 1.0)),
                    UnsupportedFamilyError);
}

TEST_CASE("sphere direction grids are unit vectors") {
    const auto d2 = sphere_directions(2, 8);
    REQUIRE(d2.size() == 8);
    CHECK(std::abs(d2[0][0] - 1.0) < 1e-15);
    CHECK(std::abs(d2[0][1]) < 1e-15);
    for (const auto& v : d2)
        CHECK(std::abs(v[0] * v[0] + v[1] * v[1] - 1.0) < 1e-12);
    for (const auto& v : sphere_directions(3, 50)) {
        double n = 0.0;
        for (double c : v) n += c * c;
        CHECK(std::abs(n - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(sphere_directions(4, 10), DimensionError);
    CHECK_THROWS_AS(sphere_directions(2, 0), ValidationError);
}

TEST_CASE("atomic weights classify as discrete") {
    const Weight W = atoms_r(
        3, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.2, -0.5, 0.8}, {-0.7, 0.3, 0.1}},
        {Complex(1.0), Complex(0.5), Complex(-0.3, 0.4), Complex(2.0)});
    const DiscretenessVerdict v = classify_discreteness(W, 12, 7);
    CHECK(v.verdict == Discreteness::Discrete);
    CHECK(v.direction_samples == 12);
    double proxy = 0.0;
    for (const Complex& c : W.atomic().masses) proxy += std::norm(c);
    CHECK(std::abs(v.atom_mass - proxy) < 0.05 * proxy);
}

TEST_CASE("complex-space atoms classify through the real picture") {
    const Weight W(complex_space(1),
                   Atomic{{{0.4, 0.3}, {-0.8, 0.1}}, {Complex(1.0), Complex(1.0)}});
    const DiscretenessVerdict v = classify_discreteness(W, 10, 21);
    CHECK(v.verdict == Discreteness::Discrete);
    CHECK(v.direction_samples == 10);
}

TEST_CASE("a genuine density classifies as continuous") {
    const DiscretenessVerdict v = classify_discreteness(uniform01(), 16, 3);
    CHECK(v.verdict == Discreteness::Continuous);
    CHECK(v.direction_samples == 0);  // no projections for densities
    CHECK(v.atom_mass > 0.0);
    CHECK(v.atom_mass < 0.05);
}

TEST_CASE("the zero weight classifies as continuous") {
    const Weight Z(real_space(2), Atomic{{}, {}});
    const DiscretenessVerdict v = classify_discreteness(Z, 12, 1);
    CHECK(v.verdict == Discreteness::Continuous);
    CHECK(v.atom_mass == 0.0);
}

TEST_CASE("classification guards its inputs") {
    const Weight W = atoms_r(2, {{0.0, 0.0}}, {Complex(1.0)});
    CHECK_THROWS_AS(classify_discreteness(W, 9, 1), ValidationError);
    DifferentialOperator L;
    L.add_term({1}, 1.0);
    const Weight pd(real_space(1), PointDistribution{{{0.0}}, {L}});
    CHECK_THROWS_AS(classify_discreteness(pd, 12, 1), UnsupportedFamilyError);
}

}  // TEST_SUITE
