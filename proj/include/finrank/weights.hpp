#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "finrank/polynomials.hpp"

namespace finrank {

enum class SpaceKind { ComplexSpace, RealSpace };

// Ambient space of a weight: C^d or R^D. Complex points are stored as
// length-2d real vectors with z_j = x_{2j-1} + i x_{2j} (1-based), so the
// real dimension is 2d for ComplexSpace(d) and D for RealSpace(D).
struct Ambient {
    SpaceKind kind;
    int dim;

    int real_dim() const { return kind == SpaceKind::ComplexSpace ? 2 * dim : dim; }
    bool operator==(const Ambient&) const = default;
};

inline Ambient complex_space(int d) { return {SpaceKind::ComplexSpace, d}; }
inline Ambient real_space(int d) { return {SpaceKind::RealSpace, d}; }

// Finite combination of real-coordinate partial derivatives
// L = sum_gamma c_gamma d^gamma. Zero coefficients are not stored.
class DifferentialOperator {
public:
    DifferentialOperator() = default;
    explicit DifferentialOperator(std::map<MultiIndex, Complex> terms);

    static DifferentialOperator identity(int real_dim, Complex c = 1.0);

    const std::map<MultiIndex, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;
    double coefficient_norm() const;  // sum of |c_gamma|

    void add_term(const MultiIndex& gamma, Complex c);
    DifferentialOperator scaled(Complex c) const;

private:
    std::map<MultiIndex, Complex> terms_;
};

// (L p)(x) by exact symbolic differentiation.
Complex apply_operator(const DifferentialOperator& L, const RealPolynomial& p,
                       const std::vector<double>& x);

struct Atomic {
    std::vector<std::vector<double>> points;  // real coordinates
    std::vector<Complex> masses;
};

struct PointDistribution {
    std::vector<std::vector<double>> points;
    std::vector<DifferentialOperator> operators;
};

struct Box {
    std::vector<std::pair<double, double>> intervals;  // per real axis

    int dim() const { return static_cast<int>(intervals.size()); }
    double volume() const;
};

struct Density {
    Box box;
    std::function<Complex(const std::vector<double>&)> evaluate;  // re-entrant
    int quadrature_order = 64;
    std::string name;  // optional; set for the named built-ins
    std::vector<double> params;  // builtin parameters, for serialization
};

// F with radial polynomial Fourier transform FT(xi) = sum_k a_k |xi|^{2k},
// RealSpace only. Moments of order <= 2K are exact, K = series.size()-1.
struct FourierRadial {
    std::vector<double> series;
    double validity_radius = std::numeric_limits<double>::infinity();

    int truncation() const { return static_cast<int>(series.size()) - 1; }
};

class Weight {
public:
    using Body = std::variant<Atomic, PointDistribution, Density, FourierRadial>;

    Weight(Ambient ambient, Body body);

    const Ambient& ambient() const { return ambient_; }
    const Body& body() const { return body_; }

    bool is_atomic() const { return std::holds_alternative<Atomic>(body_); }
    bool is_point_distribution() const {
        return std::holds_alternative<PointDistribution>(body_);
    }
    bool is_density() const { return std::holds_alternative<Density>(body_); }
    bool is_fourier_radial() const {
        return std::holds_alternative<FourierRadial>(body_);
    }
    bool is_zero() const;

    const Atomic& atomic() const { return std::get<Atomic>(body_); }
    const PointDistribution& point_distribution() const {
        return std::get<PointDistribution>(body_);
    }
    const Density& density() const { return std::get<Density>(body_); }
    const FourierRadial& fourier_radial() const {
        return std::get<FourierRadial>(body_);
    }

    // complex coordinates of stored points (ComplexSpace only)
    std::vector<std::vector<Complex>> complex_points() const;

private:
    Ambient ambient_;
    Body body_;
};

// <W, p> for ComplexSpace weights; p in (z, zbar).
Complex pair(const Weight& W, const BiPolynomial& p);
// <W, p> for RealSpace weights; p in real coordinates.
Complex pair(const Weight& W, const RealPolynomial& p);

// Reinterpret a ComplexSpace(d) Atomic/PointDistribution weight as a
// RealSpace(2d) weight over the same stored real points.
Weight as_real_space(const Weight& W);

// Named density constructors used by the CLI schema.
Weight uniform_box_density(Ambient ambient, const Box& box, double total_mass,
                           int quadrature_order = 64);
Weight gaussian_density(Ambient ambient, const std::vector<double>& center,
                        double sigma, int quadrature_order = 64);

}  // namespace finrank
