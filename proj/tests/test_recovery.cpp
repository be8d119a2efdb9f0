#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "finrank/ensemble.hpp"
#include "finrank/recovery.hpp"

using namespace finrank;

namespace {

const double kPi = 3.14159265358979323846;

Weight atoms_c1(const std::vector<Complex>& zs, const std::vector<Complex>& ms) {
    Atomic a;
    for (Complex z : zs) a.points.push_back({z.real(), z.imag()});
    a.masses = ms;
    return Weight(complex_space(1), std::move(a));
}

Weight dzbar_delta0() {
    DifferentialOperator L;
    L.add_term({1, 0}, 0.5);
    L.add_term({0, 1}, Complex(0.0, 0.5));
    return Weight(complex_space(1), PointDistribution{{{0.0, 0.0}}, {L}});
}

Complex identity_part(const DifferentialOperator& L, int real_dim) {
    const auto it = L.terms().find(MultiIndex(static_cast<size_t>(real_dim), 0));
    return it == L.terms().end() ? Complex(0.0) : it->second;
}

double match_1d(const std::vector<std::vector<Complex>>& got, Complex a) {
    double best = 1e300;
    for (const auto& p : got) best = std::min(best, std::abs(p[0] - a));
    return best;
}

}  // namespace

TEST_SUITE("recovery") {

TEST_CASE("numerical rank thresholds singular values") {
    CHECK(numerical_rank(Eigen::MatrixXcd::Zero(4, 4)).rank == 0);
    CHECK(numerical_rank(Eigen::MatrixXcd::Identity(3, 3)).rank == 3);

    const Weight W = atoms_c1({Complex(0.4, 0.0), Complex(-0.3, 0.5)},
                              {Complex(1.0), Complex(2.0)});
    CHECK(numerical_rank(analytic_moment_matrix(W, 4).entries, 1e-8).rank == 2);

    CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXcd(0, 0)), ValidationError);
    CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXcd::Identity(2, 2), 0.0),
                    ValidationError);
    CHECK_THROWS_AS(numerical_rank(Eigen::MatrixXcd::Identity(2, 2), 1.5),
                    ValidationError);
}

TEST_CASE("null polynomial of a single atom is forced") {
    const Complex a(0.4, -0.3);
    const MomentTable T =
        MomentTable::from_weight(atoms_c1({a}, {Complex(1.0)}), 5, 3);
    const UniPolynomial h = null_polynomial(T, 1);
    REQUIRE(h.degree() == 1);
    // the annihilator vanishes at conj(a); its conjugated root is the atom
    CHECK(std::abs(h.evaluate(std::conj(a))) < 1e-12);
    const auto roots = support_candidates(h);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - a) < 1e-12);
}

TEST_CASE("null polynomial of two symmetric atoms is w^2 - 1") {
    const Weight W = atoms_c1({Complex(1.0), Complex(-1.0)},
                              {Complex(1.0), Complex(1.0)});
    const MomentTable T = MomentTable::from_weight(W, 6, 4);
    const UniPolynomial h = null_polynomial(T, 2);
    REQUIRE(h.degree() == 2);
    CHECK(std::abs(h.evaluate(Complex(1.0))) < 1e-12);
    CHECK(std::abs(h.evaluate(Complex(-1.0))) < 1e-12);
    // the middle coefficient vanishes
    CHECK(std::abs(h.coeffs()[1]) < 1e-12);
}

TEST_CASE("pure antiholomorphic derivative yields a constant annihilator") {
    const MomentTable T = MomentTable::from_weight(dzbar_delta0(), 5, 3);
    // the holomorphic column is already zero, so degree 0 suffices
    CHECK(std::abs(T.data()(0, 1) - Complex(1.0)) < 1e-14);
    const UniPolynomial h = null_polynomial(T, 1);
    CHECK(h.deflated(1e-8).degree() == 0);
}

TEST_CASE("all-zero tables produce the zero-polynomial marker") {
    const MomentTable T([](int, int) { return Complex(0.0); }, 5, 3);
    CHECK(null_polynomial(T, 1).is_zero());
    CHECK_THROWS_AS(null_polynomial(T, 0), ValidationError);
    CHECK_THROWS_AS(null_polynomial(MomentTable([](int, int) { return Complex(1.0); }, 2, 3), 1),
                    ValidationError);  // too few rows
}

TEST_CASE("moment reduction kills annihilated tables") {
    // the annihilator of a unit atom at 1 reduces its table to zero
    const MomentTable T =
        MomentTable::from_weight(atoms_c1({Complex(1.0)}, {Complex(1.0)}), 5, 4);
    const UniPolynomial h({Complex(-1.0), Complex(1.0)});  // w - 1
    const MomentTable R = reduce_moments(T, h);
    CHECK(R.data().cwiseAbs().maxCoeff() < 1e-14);

    // same for the origin with h(w) = w
    const MomentTable T0 =
        MomentTable::from_weight(atoms_c1({Complex(0.0)}, {Complex(1.0)}), 5, 4);
    const MomentTable R0 =
        reduce_moments(T0, UniPolynomial({Complex(0.0), Complex(1.0)}));
    CHECK(R0.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduction by the constant rescales columns harmonically") {
    const Weight W = atoms_c1({Complex(0.5, 0.2)}, {Complex(2.0)});
    const MomentTable T = MomentTable::from_weight(W, 4, 4);
    const MomentTable R = reduce_moments(T, UniPolynomial({Complex(1.0)}));
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            CHECK(std::abs(R.data()(k, l) - T.data()(k, l) / double(l + 1)) < 1e-15);

    CHECK_THROWS_AS(reduce_moments(T, UniPolynomial::zero()), ValidationError);
    // degree too high for the stored width
    std::vector<Complex> big(6, Complex(1.0));
    CHECK_THROWS_AS(reduce_moments(T, UniPolynomial(big)), ValidationError);
    // reduced tables carry no oracle beyond the stored block
    MomentTable R2 = reduce_moments(T, UniPolynomial({Complex(1.0)}));
    CHECK_THROWS_AS(R2.extend(10, 10), ValidationError);
}

TEST_CASE("reduction does not raise the table rank") {
    const Weight W = atoms_c1({Complex(1.0), Complex(-1.0)},
                              {Complex(1.0), Complex(1.0)});
    const MomentTable T = MomentTable::from_weight(W, 6, 5);
    const UniPolynomial h = null_polynomial(T, 2);
    const MomentTable R = reduce_moments(T, h);
    const int r_before = numerical_rank(T.data(), 1e-10).rank;
    const int r_after = numerical_rank(R.data(), 1e-10).rank;
    CHECK(r_after <= r_before);
}

TEST_CASE("one-dimensional recovery round-trips atomic weights") {
    const std::vector<Complex> zs{Complex(0.3, 0.0), Complex(0.0, -0.7)};
    const std::vector<Complex> ms{Complex(1.0), Complex(2.0)};
    const RecoveryReport rep = recover_1d(atoms_c1(zs, ms), 2, 0);
    REQUIRE(rep.support.size() == 2);
    CHECK(rep.moment_residual < 1e-10);
    for (size_t j = 0; j < zs.size(); ++j) {
        CHECK(match_1d(rep.support, zs[j]) < 1e-8);
        // pick the matching point and compare its identity coefficient
        for (size_t i = 0; i < rep.support.size(); ++i)
            if (std::abs(rep.support[i][0] - zs[j]) < 1e-8)
                CHECK(std::abs(identity_part(rep.operators[i], 2) - ms[j]) < 1e-8);
    }
}

TEST_CASE("one-dimensional recovery of the origin mass") {
    const RecoveryReport rep = recover_1d(atoms_c1({Complex(0.0)}, {Complex(1.0)}), 1, 0);
    REQUIRE(rep.support.size() == 1);
    CHECK(std::abs(rep.support[0][0]) < 1e-10);
    CHECK(std::abs(identity_part(rep.operators[0], 2) - Complex(1.0)) < 1e-10);
}

TEST_CASE("recovery reconstructs a first-order operator") {
    DifferentialOperator L;
    L.add_term({1, 0}, 1.0);  // d_x
    const Weight W(complex_space(1), PointDistribution{{{0.5, 0.0}}, {L}});
    const RecoveryReport rep = recover_1d(W, 2, 1);
    REQUIRE(rep.support.size() == 1);
    CHECK(std::abs(rep.support[0][0] - Complex(0.5, 0.0)) < 1e-6);
    CHECK(rep.moment_residual < 1e-8);
    const auto it = rep.operators[0].terms().find(MultiIndex{1, 0});
    REQUIRE(it != rep.operators[0].terms().end());
    CHECK(std::abs(it->second - Complex(1.0)) < 1e-6);
}

TEST_CASE("recovery refuses a genuine density") {
    Box box;
    box.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    const Weight W = uniform_box_density(complex_space(1), box, 1.0);
    CHECK_THROWS_AS(recover_1d(W, 4, 0), RecoveryError);
}

TEST_CASE("recovery is scale-equivariant") {
    const std::vector<Complex> zs{Complex(0.2, 0.3), Complex(-0.5, -0.1)};
    const std::vector<Complex> ms{Complex(1.0, 0.0), Complex(0.5, -0.5)};
    const Complex c(2.0, -1.5);
    std::vector<Complex> scaled = ms;
    for (Complex& m : scaled) m *= c;
    const RecoveryReport r1 = recover_1d(atoms_c1(zs, ms), 2, 0);
    const RecoveryReport r2 = recover_1d(atoms_c1(zs, scaled), 2, 0);
    REQUIRE(r1.support.size() == r2.support.size());
    for (size_t i = 0; i < r1.support.size(); ++i) {
        CHECK(match_1d(r2.support, r1.support[i][0]) < 1e-10);
        for (size_t j = 0; j < r2.support.size(); ++j)
            if (std::abs(r2.support[j][0] - r1.support[i][0]) < 1e-10) {
                const Complex m1 = identity_part(r1.operators[i], 2);
                const Complex m2 = identity_part(r2.operators[j], 2);
                CHECK(std::abs(m2 - c * m1) < 1e-9);
            }
    }
}

TEST_CASE("recovering the empty weight reports empty support") {
    const Weight Z(complex_space(1), Atomic{{}, {}});
    const RecoveryReport rep = recover_1d(Z, 2, 0);
    CHECK(rep.support.empty());
    CHECK(rep.moment_residual == 0.0);
    CHECK(rep.stage_polynomials.empty());
}

TEST_CASE("support count never exceeds the matrix rank") {
    const Weight W = atoms_c1(
        {Complex(0.3, 0.2), Complex(-0.6, 0.1), Complex(0.1, -0.5)},
        {Complex(1.0), Complex(0.7), Complex(1.3)});
    const int m_bound = 6;
    const RecoveryReport rep = recover_1d(W, m_bound, 0);
    const int rank =
        numerical_rank(analytic_moment_matrix(W, 2 * m_bound).entries, 1e-8).rank;
    CHECK(static_cast<int>(rep.support.size()) <= rank);
    CHECK(rep.support.size() == 3);
}

TEST_CASE("recovered reports reproduce the input moments") {
    const Weight W = atoms_c1(
        {Complex(0.4, -0.1), Complex(-0.2, 0.6), Complex(0.7, 0.3)},
        {Complex(1.5), Complex(-0.5, 0.5), Complex(0.0, 1.0)});
    const int m_bound = 4;
    const RecoveryReport rep = recover_1d(W, m_bound, 0);
    double scale = 0.0;
    for (int k = 0; k <= 2 * m_bound; ++k)
        for (int l = 0; l <= 2 * m_bound; ++l)
            scale = std::max(scale,
                             std::abs(pair(W, BiPolynomial::monomial(1, {k}, {l}))));
    for (int k = 0; k <= 2 * m_bound; ++k)
        for (int l = 0; l <= 2 * m_bound; ++l) {
            const Complex want = pair(W, BiPolynomial::monomial(1, {k}, {l}));
            const Complex got = report_moment(rep, {k}, {l});
            CHECK(std::abs(want - got) < 1e-8 * scale);
        }
}

TEST_CASE("multi-dimensional recovery locates atoms in C^2") {
    Atomic a;
    a.points = {{1.0, 0.0, 0.0, 1.0}, {-1.0, 0.0, 2.0, 0.0}};  // (1, i), (-1, 2)
    a.masses = {Complex(1.0), Complex(1.0)};
    const Weight W(complex_space(2), std::move(a));
    Rng rng(11);
    const RecoveryReport rep = recover_multid(W, 2, 0, rng);
    REQUIRE(rep.support.size() == 2);
    CHECK(rep.moment_residual < 1e-8);
    for (const auto& p : rep.support) {
        const double d1 = std::abs(p[0] - Complex(1.0)) + std::abs(p[1] - Complex(0.0, 1.0));
        const double d2 = std::abs(p[0] - Complex(-1.0)) + std::abs(p[1] - Complex(2.0));
        CHECK(std::min(d1, d2) < 1e-6);
    }
}

TEST_CASE("mass cancellation under projection is defeated by a rotation") {
    const Weight W = collision_pair();
    Rng rng(3);
    const RecoveryReport rep = recover_multid(W, 2, 0, rng);
    REQUIRE(rep.support.size() == 2);
    for (const auto& p : rep.support) {
        const double d1 = std::abs(p[0] - Complex(1.0)) + std::abs(p[1] - Complex(1.0));
        const double d2 = std::abs(p[0] - Complex(-1.0)) + std::abs(p[1] - Complex(1.0));
        CHECK(std::min(d1, d2) < 1e-6);
    }
}

TEST_CASE("multi-dimensional recovery of the origin in C^3") {
    Atomic a;
    a.points = {{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
    a.masses = {Complex(1.0)};
    const Weight W(complex_space(3), std::move(a));
    Rng rng(5);
    const RecoveryReport rep = recover_multid(W, 1, 0, rng);
    REQUIRE(rep.support.size() == 1);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(rep.support[0][static_cast<size_t>(j)]) < 1e-10);
    CHECK(std::abs(identity_part(rep.operators[0], 6) - Complex(1.0)) < 1e-8);

    CHECK_THROWS_AS(recover_multid(atoms_c1({Complex(0.0)}, {Complex(1.0)}), 1, 0, rng),
                    DimensionError);
}

TEST_CASE("cauchy transform closed forms") {
    const Complex z(2.0, 1.0);
    const Weight d0 = atoms_c1({Complex(0.0)}, {Complex(1.0)});
    CHECK(std::abs(cauchy_transform(d0, z) - 1.0 / (kPi * z)) < 1e-15);

    const Complex a(0.3, 0.0), c(2.0, 1.0);
    const Weight W = atoms_c1({a}, {c});
    CHECK(std::abs(cauchy_transform(W, z) - c / (kPi * (z - a))) < 1e-15);

    CHECK_THROWS_AS(cauchy_transform(W, a + Complex(1e-8, 0.0)), ValidationError);
}

TEST_CASE("cauchy transform of a derivative matches the difference quotient") {
    DifferentialOperator L;
    L.add_term({1, 0}, 1.0);  // d_x at the origin
    const Weight W(complex_space(1), PointDistribution{{{0.0, 0.0}}, {L}});
    const Complex z(1.5, -0.8);
    const Complex got = cauchy_transform(W, z);
    const double h = 1e-5;
    const Weight approx = atoms_c1({Complex(h), Complex(-h)},
                                   {Complex(0.5 / h), Complex(-0.5 / h)});
    const Complex want = cauchy_transform(approx, z);
    CHECK(std::abs(got - want) < 1e-7);
    // closed form: 1 / (pi z^2)
    CHECK(std::abs(got - 1.0 / (kPi * z * z)) < 1e-14);
}

TEST_CASE("cauchy transform vanishes outside balanced circle weights") {
    const Weight W = circle_minus_delta(2048);
    for (double r : {1.5, 2.0, 3.0}) {
        const Complex z = r * std::exp(Complex(0.0, 0.9));
        CHECK(std::abs(cauchy_transform(W, z)) < 1e-10);
    }
}

}  // TEST_SUITE
