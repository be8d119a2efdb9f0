#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "finrank/rng.hpp"
#include "finrank/weights.hpp"

using namespace finrank;

namespace {

const Complex I(0.0, 1.0);

Weight delta_c1() {
    return Weight(complex_space(1), Atomic{{{0.0, 0.0}}, {Complex(1.0)}});
}

Weight atom_c1(Complex z0, Complex mass) {
    return Weight(complex_space(1), Atomic{{{z0.real(), z0.imag()}}, {mass}});
}

// the cos-transform radial weight in dimension 1: series (-1)^k / (2k)!
Weight cos_radial_1d(int K = 12) {
    std::vector<double> series;
    double c = 1.0;
    for (int k = 0; k <= K; ++k) {
        series.push_back(k % 2 == 0 ? c : -c);
        c /= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return Weight(real_space(1), FourierRadial{series});
}

BiPolynomial bi_mono(int dim, const MultiIndex& a, const MultiIndex& b,
                     Complex c = 1.0) {
    return BiPolynomial::monomial(dim, a, b, c);
}

RealPolynomial random_real_poly(Rng& rng, int dim, int terms, int max_exp) {
    RealPolynomial p(dim);
    for (int t = 0; t < terms; ++t) {
        MultiIndex g(static_cast<size_t>(dim), 0);
        for (int j = 0; j < dim; ++j) g[static_cast<size_t>(j)] = rng.uniform_int(0, max_exp);
        p.add_term(g, Complex(rng.normal(), rng.normal()));
    }
    return p;
}

BiPolynomial random_bi_poly(Rng& rng, int dim, int terms, int max_exp) {
    BiPolynomial p(dim);
    for (int t = 0; t < terms; ++t) {
        MultiIndex a(static_cast<size_t>(dim), 0), b(static_cast<size_t>(dim), 0);
        for (int j = 0; j < dim; ++j) {
            a[static_cast<size_t>(j)] = rng.uniform_int(0, max_exp);
            b[static_cast<size_t>(j)] = rng.uniform_int(0, max_exp);
        }
        p.add_term(a, b, Complex(rng.normal(), rng.normal()));
    }
    return p;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("apply_operator evaluates derivative combinations") {
    const RealPolynomial x1sq = RealPolynomial::monomial(1, {2});

    CHECK(apply_operator(DifferentialOperator::identity(1), x1sq, {3.0}) ==
          Complex(9.0, 0.0));

    DifferentialOperator d1;
    d1.add_term({1}, 1.0);
    CHECK(apply_operator(d1, x1sq, {3.0}) == Complex(6.0, 0.0));

    DifferentialOperator d1sq;
    d1sq.add_term({2}, 1.0);
    CHECK(apply_operator(d1sq, RealPolynomial::monomial(1, {3}), {0.0}) ==
          Complex(0.0, 0.0));

    CHECK_THROWS_AS(apply_operator(d1, RealPolynomial::monomial(2, {1, 0}), {0.0}),
                    DimensionError);
}

TEST_CASE("pairing worked examples across the four families") {
    // point mass at the origin against the constant
    CHECK(pair(delta_c1(), bi_mono(1, {0}, {0})) == Complex(1.0, 0.0));

    // atom at 0.5, |z|^2 evaluates to 0.25
    CHECK(pair(atom_c1(Complex(0.5, 0.0), 1.0), bi_mono(1, {1}, {1})) ==
          Complex(0.25, 0.0));

    // conjugate-Wirtinger derivative (1/2)(d_x + i d_y) at 0 against zbar
    DifferentialOperator dzbar;
    dzbar.add_term({1, 0}, 0.5);
    dzbar.add_term({0, 1}, 0.5 * I);
    const Weight W(complex_space(1), PointDistribution{{{0.0, 0.0}}, {dzbar}});
    CHECK(std::abs(pair(W, bi_mono(1, {0}, {1})) - Complex(1.0, 0.0)) < 1e-15);

    // radial weight with cosine transform in dimension 1: <F, x^2> = 1,
    // matching the inverse transform (delta_1 + delta_{-1})/2
    const Complex m2 = pair(cos_radial_1d(), RealPolynomial::monomial(1, {2}));
    CHECK(std::abs(m2 - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(pair(cos_radial_1d(), RealPolynomial::constant(1, 1.0)) -
                   Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("density pairing integrates against the box") {
    Box box;
    box.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    const Weight W = uniform_box_density(complex_space(1), box, 1.0);
    // <W, 1> is the total mass; <W, z> the centroid (1 + i)/2
    CHECK(std::abs(pair(W, bi_mono(1, {0}, {0})) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(pair(W, bi_mono(1, {1}, {0})) - Complex(0.5, 0.5)) < 1e-12);
}

TEST_CASE("pairing is linear in the test polynomial") {
    Rng rng(314);
    std::vector<Weight> weights;
    weights.push_back(atom_c1(Complex(0.3, -0.2), Complex(1.0, 0.5)));
    DifferentialOperator L;
    L.add_term({1, 0}, Complex(0.7, 0.0));
    L.add_term({0, 2}, Complex(0.0, -0.3));
    weights.push_back(
        Weight(complex_space(1), PointDistribution{{{0.1, 0.4}}, {L}}));
    Box box;
    box.intervals = {{-1.0, 1.0}, {-1.0, 1.0}};
    weights.push_back(uniform_box_density(complex_space(1), box, 2.0, 32));

    for (const Weight& W : weights) {
        const BiPolynomial p = random_bi_poly(rng, 1, 4, 3);
        const BiPolynomial q = random_bi_poly(rng, 1, 4, 3);
        const Complex a(rng.normal(), rng.normal());
        const Complex lhs = pair(W, p * a + q);
        const Complex rhs = a * pair(W, p) + pair(W, q);
        const double scale = std::max(1.0, std::abs(lhs));
        CHECK(std::abs(lhs - rhs) < 1e-12 * scale);
    }

    // the radial family, against real-coordinate polynomials
    const Weight fr = cos_radial_1d();
    const RealPolynomial p = random_real_poly(rng, 1, 4, 6);
    const RealPolynomial q = random_real_poly(rng, 1, 4, 6);
    const Complex a(rng.normal(), rng.normal());
    const Complex lhs = pair(fr, p * a + q);
    const Complex rhs = a * pair(fr, p) + pair(fr, q);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("conjugate symmetry for real-mass atomic weights") {
    Rng rng(99);
    const Weight W(complex_space(1),
                   Atomic{{{0.5, 0.1}, {-0.3, 0.7}}, {Complex(1.0), Complex(2.0)}});
    for (int trial = 0; trial < 10; ++trial) {
        const BiPolynomial p = random_bi_poly(rng, 1, 5, 3);
        const Complex lhs = pair(W, p.conjugated());
        const Complex rhs = std::conj(pair(W, p));
        CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("density pairing is stable under quadrature refinement") {
    const std::vector<double> center{0.2, -0.1};
    for (int deg_trial = 0; deg_trial < 2; ++deg_trial) {
        const Weight coarse = gaussian_density(complex_space(1), center, 0.4, 64);
        const Weight fine = gaussian_density(complex_space(1), center, 0.4, 128);
        Rng rng(5 + deg_trial);
        const BiPolynomial p = random_bi_poly(rng, 1, 5, 5);  // degree <= 10 total
        const Complex a = pair(coarse, p);
        const Complex b = pair(fine, p);
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("radial weights have vanishing odd moments") {
    const Weight fr = cos_radial_1d();
    for (int k = 1; k <= 9; k += 2)
        CHECK(pair(fr, RealPolynomial::monomial(1, {k})) == Complex(0.0, 0.0));
}

TEST_CASE("radial weights refuse moments beyond the stored truncation") {
    const Weight fr = Weight(real_space(1), FourierRadial{{1.0, -0.5}});  // K = 1
    CHECK_NOTHROW(pair(fr, RealPolynomial::monomial(1, {2})));
    CHECK_THROWS_AS(pair(fr, RealPolynomial::monomial(1, {4})), TruncationError);
}

TEST_CASE("constructors canonicalize stored bodies") {
    // zero masses are dropped
    const Weight W(complex_space(1),
                   Atomic{{{0.0, 0.0}, {1.0, 0.0}}, {Complex(0.0), Complex(2.0)}});
    CHECK(W.atomic().masses.size() == 1);
    CHECK(W.atomic().masses[0] == Complex(2.0));

    // fully cancelled weight is the zero weight
    const Weight Z(complex_space(1), Atomic{{{0.0, 0.0}}, {Complex(0.0)}});
    CHECK(Z.is_zero());

    // zero operators are dropped from point distributions
    const Weight P(complex_space(1),
                   PointDistribution{{{0.0, 0.0}}, {DifferentialOperator{}}});
    CHECK(P.is_zero());

    // zero coefficients never stored inside operators
    DifferentialOperator L;
    L.add_term({1, 0}, 1.0);
    L.add_term({1, 0}, -1.0);
    CHECK(L.is_zero());
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(Weight(complex_space(1), Atomic{{{0.0, 0.0}}, {}}),
                    ValidationError);
    CHECK_THROWS_AS(Weight(complex_space(1), Atomic{{{0.0}}, {Complex(1.0)}}),
                    DimensionError);

    Box flat;
    flat.intervals = {{0.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(uniform_box_density(complex_space(1), flat, 1.0),
                    ValidationError);

    Box box;
    box.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(uniform_box_density(complex_space(1), box, 1.0, 0),
                    ValidationError);

    CHECK_THROWS_AS(Weight(complex_space(1), FourierRadial{{1.0}}),
                    UnsupportedFamilyError);
    CHECK_THROWS_AS(Weight(real_space(1), FourierRadial{{}}), ValidationError);
    CHECK_THROWS_AS(gaussian_density(complex_space(1), {0.0}, 1.0),
                    DimensionError);
    CHECK_THROWS_AS(gaussian_density(real_space(1), {0.0}, -1.0),
                    ValidationError);
}

TEST_CASE("pairing rejects mismatched ambients") {
    CHECK_THROWS_AS(pair(delta_c1(), RealPolynomial::constant(2, 1.0)),
                    DimensionError);
    const Weight R(real_space(2), Atomic{{{0.0, 0.0}}, {Complex(1.0)}});
    CHECK_THROWS_AS(pair(R, BiPolynomial::constant(1, 1.0)), DimensionError);
    CHECK_THROWS_AS(pair(delta_c1(), BiPolynomial::constant(2, 1.0)),
                    DimensionError);
}

TEST_CASE("as_real_space reinterprets complex atoms") {
    const Weight W = atom_c1(Complex(0.5, -0.25), Complex(2.0, 1.0));
    const Weight R = as_real_space(W);
    CHECK(R.ambient() == real_space(2));
    // the same point evaluated through real coordinates
    RealPolynomial p(2);
    p.add_term({1, 0}, 1.0);
    p.add_term({0, 1}, 1.0);
    CHECK(pair(R, p) == Complex(2.0, 1.0) * Complex(0.25, 0.0));

    Box box;
    box.intervals = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(as_real_space(uniform_box_density(complex_space(1), box, 1.0)),
                    UnsupportedFamilyError);
}

TEST_CASE("complex_points decodes stored real coordinates") {
    const Weight W(complex_space(2),
                   Atomic{{{1.0, 2.0, 3.0, 4.0}}, {Complex(1.0)}});
    const auto zs = W.complex_points();
    REQUIRE(zs.size() == 1);
    CHECK(zs[0][0] == Complex(1.0, 2.0));
    CHECK(zs[0][1] == Complex(3.0, 4.0));
}

}  // TEST_SUITE
