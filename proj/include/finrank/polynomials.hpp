#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finrank/multi_index.hpp"

namespace finrank {

using Complex = std::complex<double>;

// Sparse polynomial in (z, zbar) over C^d. Terms map (alpha, beta) to a
// complex coefficient; alpha is the holomorphic exponent, beta the
// antiholomorphic one. Zero coefficients are never stored.
class BiPolynomial {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;

    explicit BiPolynomial(int dim);
    BiPolynomial(int dim, std::map<Key, Complex> terms);

    static BiPolynomial zero(int dim) { return BiPolynomial(dim); }
    static BiPolynomial constant(int dim, Complex c);
    static BiPolynomial monomial(int dim, const MultiIndex& alpha,
                                 const MultiIndex& beta, Complex c = 1.0);
    // z_j as a polynomial (0-based coordinate index)
    static BiPolynomial variable(int dim, int j);

    int dim() const { return dim_; }
    const std::map<Key, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_holomorphic() const;
    int holo_degree() const;  // max |alpha|
    int anti_degree() const;  // max |beta|

    void add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c);

    BiPolynomial operator+(const BiPolynomial& o) const;
    BiPolynomial operator-(const BiPolynomial& o) const;
    BiPolynomial operator*(Complex c) const;

    BiPolynomial conjugated() const;          // swap alpha/beta, conj coefficients
    Complex evaluate(const std::vector<Complex>& z) const;

    std::string render() const;  // graded-lex term order, canonical text

private:
    int dim_;
    std::map<Key, Complex> terms_;
};

// Sparse polynomial in real coordinates x_1..x_D with complex coefficients.
class RealPolynomial {
public:
    explicit RealPolynomial(int dim);
    RealPolynomial(int dim, std::map<MultiIndex, Complex> terms);

    static RealPolynomial zero(int dim) { return RealPolynomial(dim); }
    static RealPolynomial constant(int dim, Complex c);
    static RealPolynomial monomial(int dim, const MultiIndex& gamma,
                                   Complex c = 1.0);
    static RealPolynomial variable(int dim, int j);

    int dim() const { return dim_; }
    const std::map<MultiIndex, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add_term(const MultiIndex& gamma, Complex c);

    RealPolynomial operator+(const RealPolynomial& o) const;
    RealPolynomial operator-(const RealPolynomial& o) const;
    RealPolynomial operator*(Complex c) const;

    Complex evaluate(const std::vector<double>& x) const;

    // partial derivative with respect to x_j
    RealPolynomial derivative(int j) const;
    // mixed partial d^gamma
    RealPolynomial derivative(const MultiIndex& gamma) const;

    double coefficient_norm() const;
    std::string render() const;

private:
    int dim_;
    std::map<MultiIndex, Complex> terms_;
};

// Dense univariate polynomial c_0 + c_1 w + ... + c_m w^m.
class UniPolynomial {
public:
    UniPolynomial() = default;
    explicit UniPolynomial(std::vector<Complex> coeffs);

    static UniPolynomial zero() { return UniPolynomial(); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    Complex evaluate(Complex w) const;
    // drop leading coefficients below rel_tol * max |c|
    UniPolynomial deflated(double rel_tol) const;
    std::string render() const;

private:
    std::vector<Complex> coeffs_;
};

BiPolynomial multiply(const BiPolynomial& p, const BiPolynomial& q);
RealPolynomial multiply(const RealPolynomial& p, const RealPolynomial& q);

// Interpret op's monomials as mixed partials and apply to target:
// a BiPolynomial term c z^alpha zbar^beta acts as c D^alpha Dbar^beta, a
// RealPolynomial term c x^gamma acts as c d^gamma.
BiPolynomial apply_diff(const BiPolynomial& op, const BiPolynomial& target);
RealPolynomial apply_diff(const RealPolynomial& op, const RealPolynomial& target);

// Rewrite p(z, zbar) in real coordinates via z_j = x_{2j-1} + i x_{2j}.
RealPolynomial complexify(const BiPolynomial& p);

// V(Z) = prod_{i<j} (z_i - z_j), holomorphic, degree N(N-1)/2.
BiPolynomial vandermonde_poly(int N);

}  // namespace finrank
