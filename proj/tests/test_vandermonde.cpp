#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "finrank/multi_index.hpp"
#include "finrank/rng.hpp"
#include "finrank/vandermonde.hpp"

using namespace finrank;

namespace {

BiPolynomial random_holo(int N, int deg, std::uint64_t seed) {
    Rng rng(seed);
    BiPolynomial p = BiPolynomial::zero(N);
    const MultiIndex zero(static_cast<size_t>(N), 0);
    for (const MultiIndex& alpha : indices_up_to(N, deg))
        p.add_term(alpha, zero, Complex(rng.normal(), rng.normal()));
    return p;
}

double l1(const BiPolynomial& p) {
    double s = 0.0;
    for (const auto& [key, c] : p.terms()) s += std::abs(c);
    return s;
}

}  // namespace

TEST_SUITE("vandermonde") {

TEST_CASE("symmetric samples are symmetric power-sum combinations") {
    const BiPolynomial p = symmetric_sample(2, 1, 7);
    CHECK(p.is_holomorphic());
    CHECK(is_symmetric(p));
    // degree-1 part is a multiple of z1 + z2
    const MultiIndex zero{0, 0};
    const auto c10 = p.terms().find({MultiIndex{1, 0}, zero});
    const auto c01 = p.terms().find({MultiIndex{0, 1}, zero});
    REQUIRE(c10 != p.terms().end());
    REQUIRE(c01 != p.terms().end());
    CHECK(c10->second == c01->second);

    CHECK(is_symmetric(symmetric_sample(3, 3, 19)));
    CHECK(is_symmetric(symmetric_sample(4, 2, 23)));
}

TEST_CASE("sampling is deterministic in the seed") {
    const BiPolynomial a = symmetric_sample(3, 2, 42);
    const BiPolynomial b = symmetric_sample(3, 2, 42);
    CHECK((a - b).is_zero());
    CHECK_THROWS_AS(symmetric_sample(1, 2, 0), ValidationError);
    CHECK_THROWS_AS(symmetric_sample(3, -1, 0), ValidationError);
}

TEST_CASE("symmetry detection sees through asymmetric terms") {
    BiPolynomial p = BiPolynomial::zero(2);
    p.add_term({1, 0}, {0, 0}, 1.0);
    CHECK_FALSE(is_symmetric(p));
    p.add_term({0, 1}, {0, 0}, 1.0);
    CHECK(is_symmetric(p));
}

TEST_CASE("symmetric factors annihilate the paired functional") {
    for (int N : {2, 3}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const BiPolynomial H1 = symmetric_sample(N, N, 100 + s);
            const BiPolynomial H2 = random_holo(N, N, 200 + s);
            const double tol = 1e-9 * (1.0 + l1(H1) * l1(H2));
            CHECK(std::abs(check_annihilation(H1, H2, N)) < tol);
            CHECK(std::abs(check_annihilation(H2, H1, N)) < tol);
            // both factors symmetric: still zero
            const BiPolynomial H3 = symmetric_sample(N, N - 1, 300 + s);
            CHECK(std::abs(check_annihilation(H1, H3, N)) < tol);
        }
    }
}

TEST_CASE("the vandermonde factor itself is not annihilated") {
    const Complex v2 = check_annihilation(vandermonde_poly(2), vandermonde_poly(2), 2);
    CHECK(std::abs(v2 - Complex(4.0)) < 1e-12);
    const Complex v3 = check_annihilation(vandermonde_poly(3), vandermonde_poly(3), 3);
    CHECK(std::abs(v3 - Complex(144.0)) < 1e-9);
    // and the value is a square, hence real nonnegative
    CHECK(v2.imag() == doctest::Approx(0.0));
    CHECK(v3.imag() == doctest::Approx(0.0));
}

TEST_CASE("constants are annihilated outright") {
    const BiPolynomial one = BiPolynomial::constant(2, 1.0);
    CHECK(check_annihilation(one, one, 2) == Complex(0.0));
}

TEST_CASE("the functional factors through the derivative at zero") {
    for (int N : {2, 3}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const BiPolynomial H1 = random_holo(N, N, 400 + s);
            const BiPolynomial H2 = random_holo(N, N, 500 + s);
            const Complex f1 = vandermonde_derivative_at_zero(H1, N);
            const Complex f2 = vandermonde_derivative_at_zero(H2, N);
            const Complex whole = check_annihilation(H1, H2, N);
            CHECK(std::abs(whole - f1 * std::conj(f2)) <
                  1e-9 * (1.0 + std::abs(f1) * std::abs(f2)));
        }
    }
    // the factor of the vandermonde against itself: 2 for N = 2
    CHECK(std::abs(vandermonde_derivative_at_zero(vandermonde_poly(2), 2) -
                   Complex(2.0)) < 1e-14);
}

TEST_CASE("the check guards its inputs") {
    const BiPolynomial one2 = BiPolynomial::constant(2, 1.0);
    const BiPolynomial one5 = BiPolynomial::constant(5, 1.0);
    CHECK_THROWS_AS(check_annihilation(one2, one2, 1), ValidationError);
    CHECK_THROWS_AS(check_annihilation(one5, one5, 5), ValidationError);
    CHECK_THROWS_AS(check_annihilation(one2, BiPolynomial::constant(3, 1.0), 2),
                    DimensionError);
    BiPolynomial anti = BiPolynomial::zero(2);
    anti.add_term({0, 0}, {1, 0}, 1.0);
    CHECK_THROWS_AS(check_annihilation(anti, one2, 2), ValidationError);
    CHECK_THROWS_AS(vandermonde_derivative_at_zero(anti, 2), ValidationError);
    CHECK_THROWS_AS(vandermonde_derivative_at_zero(one2, 3), DimensionError);
}

}  // TEST_SUITE
