#include "finrank/weights.hpp"

#include <cmath>

#include "finrank/quadrature.hpp"

namespace finrank {

namespace {

void check_points(const std::vector<std::vector<double>>& pts, int real_dim,
                  size_t payload) {
    if (pts.size() != payload)
        throw ValidationError("weight has mismatched points/values counts");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != real_dim)
            throw DimensionError("weight point has wrong dimension");
}

}  // namespace

// -------------------------------------------------------- DifferentialOperator

DifferentialOperator::DifferentialOperator(std::map<MultiIndex, Complex> terms)
    : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == Complex(0.0, 0.0)) it = terms_.erase(it);
        else ++it;
    }
}

DifferentialOperator DifferentialOperator::identity(int real_dim, Complex c) {
    DifferentialOperator L;
    L.add_term(MultiIndex(static_cast<size_t>(real_dim), 0), c);
    return L;
}

int DifferentialOperator::order() const {
    int o = 0;
    for (const auto& [g, c] : terms_) o = std::max(o, finrank::order(g));
    return o;
}

double DifferentialOperator::coefficient_norm() const {
    double s = 0.0;
    for (const auto& [g, c] : terms_) s += std::abs(c);
    return s;
}

void DifferentialOperator::add_term(const MultiIndex& gamma, Complex c) {
    auto it = terms_.find(gamma);
    if (it == terms_.end()) {
        if (c != Complex(0.0, 0.0)) terms_.emplace(gamma, c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

DifferentialOperator DifferentialOperator::scaled(Complex c) const {
    DifferentialOperator out;
    if (c == Complex(0.0, 0.0)) return out;
    for (const auto& [g, v] : terms_) out.terms_[g] = v * c;
    return out;
}

Complex apply_operator(const DifferentialOperator& L, const RealPolynomial& p,
                       const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.dim())
        throw DimensionError("apply_operator: point/polynomial dimension mismatch");
    Complex total = 0.0;
    for (const auto& [gamma, c] : L.terms()) {
        if (static_cast<int>(gamma.size()) != p.dim())
            throw DimensionError("apply_operator: operator dimension mismatch");
        total += c * p.derivative(gamma).evaluate(x);
    }
    return total;
}

// ------------------------------------------------------------------------- Box

double Box::volume() const {
    double v = 1.0;
    for (const auto& [a, b] : intervals) v *= (b - a);
    return v;
}

// ---------------------------------------------------------------------- Weight

Weight::Weight(Ambient ambient, Body body)
    : ambient_(ambient), body_(std::move(body)) {
    if (ambient_.dim < 1) throw DimensionError("ambient dimension must be >= 1");
    const int rd = ambient_.real_dim();
    if (auto* a = std::get_if<Atomic>(&body_)) {
        check_points(a->points, rd, a->masses.size());
        // canonicalize: drop zero masses
        std::vector<std::vector<double>> pts;
        std::vector<Complex> ms;
        for (size_t j = 0; j < a->masses.size(); ++j) {
            if (a->masses[j] == Complex(0.0, 0.0)) continue;
            pts.push_back(a->points[j]);
            ms.push_back(a->masses[j]);
        }
        a->points = std::move(pts);
        a->masses = std::move(ms);
    } else if (auto* pd = std::get_if<PointDistribution>(&body_)) {
        check_points(pd->points, rd, pd->operators.size());
        std::vector<std::vector<double>> pts;
        std::vector<DifferentialOperator> ops;
        for (size_t j = 0; j < pd->operators.size(); ++j) {
            if (pd->operators[j].is_zero()) continue;
            for (const auto& [g, c] : pd->operators[j].terms())
                if (static_cast<int>(g.size()) != rd)
                    throw DimensionError("operator multi-index has wrong length");
            pts.push_back(pd->points[j]);
            ops.push_back(pd->operators[j]);
        }
        pd->points = std::move(pts);
        pd->operators = std::move(ops);
    } else if (auto* de = std::get_if<Density>(&body_)) {
        if (de->box.dim() != rd)
            throw DimensionError("density box dimension mismatch");
        if (de->box.volume() <= 0.0)
            throw ValidationError("density box must have positive volume");
        if (de->quadrature_order < 1)
            throw ValidationError("density quadrature order must be >= 1");
        if (!de->evaluate) throw ValidationError("density evaluator missing");
    } else if (auto* fr = std::get_if<FourierRadial>(&body_)) {
        if (ambient_.kind != SpaceKind::RealSpace)
            throw UnsupportedFamilyError(
                "fourier_radial weights live over real space");
        if (fr->series.empty())
            throw ValidationError("fourier_radial series must be nonempty");
    }
}

bool Weight::is_zero() const {
    if (auto* a = std::get_if<Atomic>(&body_)) return a->masses.empty();
    if (auto* pd = std::get_if<PointDistribution>(&body_))
        return pd->operators.empty();
    return false;
}

std::vector<std::vector<Complex>> Weight::complex_points() const {
    if (ambient_.kind != SpaceKind::ComplexSpace)
        throw DimensionError("complex_points: weight is not over complex space");
    const std::vector<std::vector<double>>* pts = nullptr;
    if (auto* a = std::get_if<Atomic>(&body_)) pts = &a->points;
    else if (auto* pd = std::get_if<PointDistribution>(&body_)) pts = &pd->points;
    else throw UnsupportedFamilyError("complex_points: weight has no point list");
    std::vector<std::vector<Complex>> out;
    out.reserve(pts->size());
    for (const auto& p : *pts) {
        std::vector<Complex> z(static_cast<size_t>(ambient_.dim));
        for (int j = 0; j < ambient_.dim; ++j)
            z[static_cast<size_t>(j)] =
                Complex(p[static_cast<size_t>(2 * j)], p[static_cast<size_t>(2 * j + 1)]);
        out.push_back(std::move(z));
    }
    return out;
}

// --------------------------------------------------------------------- pairing

namespace {

Complex pair_density_real(const Density& de,
                          const std::function<Complex(const std::vector<double>&)>& f) {
    const int D = de.box.dim();
    std::vector<QuadratureRule> rules;
    rules.reserve(static_cast<size_t>(D));
    for (const auto& [a, b] : de.box.intervals)
        rules.push_back(gauss_legendre_on(de.quadrature_order, a, b));
    std::vector<double> x(static_cast<size_t>(D), 0.0);
    Complex total = 0.0;
    auto rec = [&](auto&& self, int axis, double w) -> void {
        if (axis == D) {
            total += w * f(x) * de.evaluate(x);
            return;
        }
        const auto& r = rules[static_cast<size_t>(axis)];
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            x[static_cast<size_t>(axis)] = r.nodes[i];
            self(self, axis + 1, w * r.weights[i]);
        }
    };
    rec(rec, 0, 1.0);
    return total;
}

Complex fourier_radial_moment(const FourierRadial& fr, const MultiIndex& gamma) {
    const int o = order(gamma);
    if (o > 2 * fr.truncation()) throw TruncationError();
    // nonzero only for gamma = 2*delta componentwise
    MultiIndex delta(gamma.size(), 0);
    for (size_t j = 0; j < gamma.size(); ++j) {
        if (gamma[j] % 2 != 0) return 0.0;
        delta[j] = gamma[j] / 2;
    }
    const int k = order(delta);
    double factor = fr.series[static_cast<size_t>(k)];
    factor *= factorial(k) / multi_factorial(delta);
    factor *= multi_factorial(gamma);  // (2 delta)!
    if (k % 2 != 0) factor = -factor;
    return factor;
}

}  // namespace

Complex pair(const Weight& W, const BiPolynomial& p) {
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("pair: bipolynomial against a real-space weight");
    if (p.dim() != W.ambient().dim)
        throw DimensionError("pair: polynomial dimension mismatch");
    if (W.is_atomic()) {
        const auto& a = W.atomic();
        const auto zs = W.complex_points();
        Complex total = 0.0;
        for (size_t j = 0; j < zs.size(); ++j)
            total += a.masses[j] * p.evaluate(zs[j]);
        return total;
    }
    if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        const RealPolynomial rp = complexify(p);
        Complex total = 0.0;
        for (size_t j = 0; j < pd.points.size(); ++j)
            total += apply_operator(pd.operators[j], rp, pd.points[j]);
        return total;
    }
    if (W.is_density()) {
        const auto& de = W.density();
        const int d = W.ambient().dim;
        auto f = [&](const std::vector<double>& x) {
            std::vector<Complex> z(static_cast<size_t>(d));
            for (int j = 0; j < d; ++j)
                z[static_cast<size_t>(j)] = Complex(x[static_cast<size_t>(2 * j)],
                                                    x[static_cast<size_t>(2 * j + 1)]);
            return p.evaluate(z);
        };
        return pair_density_real(de, f);
    }
    throw UnsupportedFamilyError("pair: unsupported family for complex space");
}

Complex pair(const Weight& W, const RealPolynomial& p) {
    if (W.ambient().kind != SpaceKind::RealSpace)
        throw DimensionError("pair: real polynomial against a complex-space weight");
    if (p.dim() != W.ambient().dim)
        throw DimensionError("pair: polynomial dimension mismatch");
    if (W.is_atomic()) {
        const auto& a = W.atomic();
        Complex total = 0.0;
        for (size_t j = 0; j < a.points.size(); ++j)
            total += a.masses[j] * p.evaluate(a.points[j]);
        return total;
    }
    if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        Complex total = 0.0;
        for (size_t j = 0; j < pd.points.size(); ++j)
            total += apply_operator(pd.operators[j], p, pd.points[j]);
        return total;
    }
    if (W.is_density()) {
        const auto& de = W.density();
        auto f = [&](const std::vector<double>& x) { return p.evaluate(x); };
        return pair_density_real(de, f);
    }
    const auto& fr = W.fourier_radial();
    Complex total = 0.0;
    for (const auto& [gamma, c] : p.terms())
        total += c * fourier_radial_moment(fr, gamma);
    return total;
}

Weight as_real_space(const Weight& W) {
    if (W.ambient().kind != SpaceKind::ComplexSpace)
        throw DimensionError("as_real_space expects a complex-space weight");
    if (!W.is_atomic() && !W.is_point_distribution())
        throw UnsupportedFamilyError("as_real_space supports point-type weights");
    return Weight(real_space(W.ambient().real_dim()), W.body());
}

Weight uniform_box_density(Ambient ambient, const Box& box, double total_mass,
                           int quadrature_order) {
    const double vol = box.volume();
    if (vol <= 0.0) throw ValidationError("density box must have positive volume");
    const double rho = total_mass / vol;
    Density de;
    de.box = box;
    de.evaluate = [rho](const std::vector<double>&) { return Complex(rho, 0.0); };
    de.quadrature_order = quadrature_order;
    de.name = "uniform_box";
    de.params = {total_mass};
    return Weight(ambient, std::move(de));
}

Weight gaussian_density(Ambient ambient, const std::vector<double>& center,
                        double sigma, int quadrature_order) {
    const int rd = ambient.real_dim();
    if (static_cast<int>(center.size()) != rd)
        throw DimensionError("gaussian center has wrong dimension");
    if (sigma <= 0.0) throw ValidationError("gaussian sigma must be positive");
    Box box;
    // +-8 sigma captures the mass to ~1e-28
    for (int j = 0; j < rd; ++j)
        box.intervals.push_back({center[static_cast<size_t>(j)] - 8.0 * sigma,
                                 center[static_cast<size_t>(j)] + 8.0 * sigma});
    const double pi = 3.14159265358979323846;
    const double norm = std::pow(2.0 * pi * sigma * sigma, -0.5 * rd);
    std::vector<double> c = center;
    Density de;
    de.box = box;
    de.evaluate = [c, sigma, norm](const std::vector<double>& x) {
        double s = 0.0;
        for (size_t j = 0; j < x.size(); ++j) {
            const double t = x[j] - c[j];
            s += t * t;
        }
        return Complex(norm * std::exp(-0.5 * s / (sigma * sigma)), 0.0);
    };
    de.quadrature_order = quadrature_order;
    de.name = "gaussian";
    de.params = center;
    de.params.push_back(sigma);
    return Weight(ambient, std::move(de));
}

}  // namespace finrank
