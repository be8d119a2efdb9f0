#include "finrank/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace finrank {

namespace {

bool negligible(Complex c) { return c == Complex(0.0, 0.0); }

void render_coeff(std::ostringstream& os, Complex c, bool first) {
    // canonical: (re,im) always printed, sign folded into the separator
    if (!first) os << " + ";
    os << "(" << c.real() << "," << c.imag() << ")";
}

void render_power(std::ostringstream& os, const char* sym, int var, int e) {
    if (e == 0) return;
    os << "*" << sym << var + 1;
    if (e > 1) os << "^" << e;
}

}  // namespace

// ---------------------------------------------------------------- BiPolynomial

BiPolynomial::BiPolynomial(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("polynomial dimension must be >= 1");
}

BiPolynomial::BiPolynomial(int dim, std::map<Key, Complex> terms)
    : dim_(dim), terms_(std::move(terms)) {
    if (dim < 1) throw DimensionError("polynomial dimension must be >= 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (static_cast<int>(it->first.first.size()) != dim_ ||
            static_cast<int>(it->first.second.size()) != dim_)
            throw DimensionError("bipolynomial term has wrong index length");
        if (negligible(it->second)) it = terms_.erase(it);
        else ++it;
    }
}

BiPolynomial BiPolynomial::constant(int dim, Complex c) {
    BiPolynomial p(dim);
    p.add_term(MultiIndex(static_cast<size_t>(dim), 0),
               MultiIndex(static_cast<size_t>(dim), 0), c);
    return p;
}

BiPolynomial BiPolynomial::monomial(int dim, const MultiIndex& alpha,
                                    const MultiIndex& beta, Complex c) {
    BiPolynomial p(dim);
    p.add_term(alpha, beta, c);
    return p;
}

BiPolynomial BiPolynomial::variable(int dim, int j) {
    if (j < 0 || j >= dim) throw DimensionError("variable index out of range");
    MultiIndex a(static_cast<size_t>(dim), 0), b(static_cast<size_t>(dim), 0);
    a[static_cast<size_t>(j)] = 1;
    return monomial(dim, a, b, 1.0);
}

bool BiPolynomial::is_holomorphic() const {
    for (const auto& [key, c] : terms_)
        if (order(key.second) > 0) return false;
    return true;
}

int BiPolynomial::holo_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, order(key.first));
    return d;
}

int BiPolynomial::anti_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, order(key.second));
    return d;
}

void BiPolynomial::add_term(const MultiIndex& alpha, const MultiIndex& beta,
                            Complex c) {
    if (static_cast<int>(alpha.size()) != dim_ ||
        static_cast<int>(beta.size()) != dim_)
        throw DimensionError("bipolynomial term has wrong index length");
    Key key{alpha, beta};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!negligible(c)) terms_.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (negligible(it->second)) terms_.erase(it);
}

BiPolynomial BiPolynomial::operator+(const BiPolynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("bipolynomial dimension mismatch");
    BiPolynomial r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
}

BiPolynomial BiPolynomial::operator-(const BiPolynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("bipolynomial dimension mismatch");
    BiPolynomial r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, -c);
    return r;
}

BiPolynomial BiPolynomial::operator*(Complex c) const {
    BiPolynomial r(dim_);
    if (negligible(c)) return r;
    for (const auto& [key, v] : terms_) r.terms_[key] = v * c;
    return r;
}

BiPolynomial BiPolynomial::conjugated() const {
    BiPolynomial r(dim_);
    for (const auto& [key, c] : terms_)
        r.add_term(key.second, key.first, std::conj(c));
    return r;
}

Complex BiPolynomial::evaluate(const std::vector<Complex>& z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw DimensionError("evaluation point has wrong dimension");
    Complex total = 0.0;
    for (const auto& [key, c] : terms_) {
        Complex t = c;
        for (int j = 0; j < dim_; ++j) {
            for (int e = 0; e < key.first[static_cast<size_t>(j)]; ++e)
                t *= z[static_cast<size_t>(j)];
            for (int e = 0; e < key.second[static_cast<size_t>(j)]; ++e)
                t *= std::conj(z[static_cast<size_t>(j)]);
        }
        total += t;
    }
    return total;
}

std::string BiPolynomial::render() const {
    if (terms_.empty()) return "0";
    // order terms by grlex on (alpha then beta)
    std::vector<const std::pair<const Key, Complex>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        if (a->first.first != b->first.first)
            return grlex_less(a->first.first, b->first.first);
        return grlex_less(a->first.second, b->first.second);
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        render_coeff(os, t->second, first);
        first = false;
        for (int j = 0; j < dim_; ++j)
            render_power(os, "z", j, t->first.first[static_cast<size_t>(j)]);
        for (int j = 0; j < dim_; ++j)
            render_power(os, "w", j, t->first.second[static_cast<size_t>(j)]);
    }
    return os.str();
}

// -------------------------------------------------------------- RealPolynomial

RealPolynomial::RealPolynomial(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("polynomial dimension must be >= 1");
}

RealPolynomial::RealPolynomial(int dim, std::map<MultiIndex, Complex> terms)
    : dim_(dim), terms_(std::move(terms)) {
    if (dim < 1) throw DimensionError("polynomial dimension must be >= 1");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (static_cast<int>(it->first.size()) != dim_)
            throw DimensionError("polynomial term has wrong index length");
        if (negligible(it->second)) it = terms_.erase(it);
        else ++it;
    }
}

RealPolynomial RealPolynomial::constant(int dim, Complex c) {
    RealPolynomial p(dim);
    p.add_term(MultiIndex(static_cast<size_t>(dim), 0), c);
    return p;
}

RealPolynomial RealPolynomial::monomial(int dim, const MultiIndex& gamma,
                                        Complex c) {
    RealPolynomial p(dim);
    p.add_term(gamma, c);
    return p;
}

RealPolynomial RealPolynomial::variable(int dim, int j) {
    if (j < 0 || j >= dim) throw DimensionError("variable index out of range");
    MultiIndex g(static_cast<size_t>(dim), 0);
    g[static_cast<size_t>(j)] = 1;
    return monomial(dim, g, 1.0);
}

int RealPolynomial::degree() const {
    int d = 0;
    for (const auto& [g, c] : terms_) d = std::max(d, order(g));
    return d;
}

void RealPolynomial::add_term(const MultiIndex& gamma, Complex c) {
    if (static_cast<int>(gamma.size()) != dim_)
        throw DimensionError("polynomial term has wrong index length");
    auto it = terms_.find(gamma);
    if (it == terms_.end()) {
        if (!negligible(c)) terms_.emplace(gamma, c);
        return;
    }
    it->second += c;
    if (negligible(it->second)) terms_.erase(it);
}

RealPolynomial RealPolynomial::operator+(const RealPolynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("polynomial dimension mismatch");
    RealPolynomial r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, c);
    return r;
}

RealPolynomial RealPolynomial::operator-(const RealPolynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("polynomial dimension mismatch");
    RealPolynomial r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, -c);
    return r;
}

RealPolynomial RealPolynomial::operator*(Complex c) const {
    RealPolynomial r(dim_);
    if (negligible(c)) return r;
    for (const auto& [g, v] : terms_) r.terms_[g] = v * c;
    return r;
}

Complex RealPolynomial::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw DimensionError("evaluation point has wrong dimension");
    Complex total = 0.0;
    for (const auto& [g, c] : terms_) {
        double m = 1.0;
        for (int j = 0; j < dim_; ++j)
            for (int e = 0; e < g[static_cast<size_t>(j)]; ++e)
                m *= x[static_cast<size_t>(j)];
        total += c * m;
    }
    return total;
}

RealPolynomial RealPolynomial::derivative(int j) const {
    if (j < 0 || j >= dim_) throw DimensionError("derivative index out of range");
    RealPolynomial r(dim_);
    for (const auto& [g, c] : terms_) {
        const int e = g[static_cast<size_t>(j)];
        if (e == 0) continue;
        MultiIndex g2 = g;
        g2[static_cast<size_t>(j)] = e - 1;
        r.add_term(g2, c * static_cast<double>(e));
    }
    return r;
}

RealPolynomial RealPolynomial::derivative(const MultiIndex& gamma) const {
    if (static_cast<int>(gamma.size()) != dim_)
        throw DimensionError("derivative multi-index has wrong length");
    RealPolynomial r = *this;
    for (int j = 0; j < dim_; ++j)
        for (int e = 0; e < gamma[static_cast<size_t>(j)]; ++e)
            r = r.derivative(j);
    return r;
}

double RealPolynomial::coefficient_norm() const {
    double s = 0.0;
    for (const auto& [g, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

std::string RealPolynomial::render() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const MultiIndex, Complex>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [](auto* a, auto* b) { return grlex_less(a->first, b->first); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        render_coeff(os, t->second, first);
        first = false;
        for (int j = 0; j < dim_; ++j)
            render_power(os, "x", j, t->first[static_cast<size_t>(j)]);
    }
    return os.str();
}

// --------------------------------------------------------------- UniPolynomial

UniPolynomial::UniPolynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && negligible(coeffs_.back())) coeffs_.pop_back();
}

Complex UniPolynomial::evaluate(Complex w) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * w + *it;
    return acc;
}

UniPolynomial UniPolynomial::deflated(double rel_tol) const {
    double mx = 0.0;
    for (Complex c : coeffs_) mx = std::max(mx, std::abs(c));
    std::vector<Complex> cs = coeffs_;
    while (cs.size() > 1 && std::abs(cs.back()) < rel_tol * mx) cs.pop_back();
    return UniPolynomial(std::move(cs));
}

std::string UniPolynomial::render() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << " + ";
        os << "(" << coeffs_[i].real() << "," << coeffs_[i].imag() << ")";
        if (i >= 1) {
            os << "*w";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ------------------------------------------------------------------ operations

BiPolynomial multiply(const BiPolynomial& p, const BiPolynomial& q) {
    if (p.dim() != q.dim()) throw DimensionError("bipolynomial dimension mismatch");
    BiPolynomial r(p.dim());
    for (const auto& [ka, ca] : p.terms()) {
        for (const auto& [kb, cb] : q.terms()) {
            MultiIndex alpha = ka.first, beta = ka.second;
            for (size_t j = 0; j < alpha.size(); ++j) {
                alpha[j] += kb.first[j];
                beta[j] += kb.second[j];
            }
            r.add_term(alpha, beta, ca * cb);
        }
    }
    return r;
}

RealPolynomial multiply(const RealPolynomial& p, const RealPolynomial& q) {
    if (p.dim() != q.dim()) throw DimensionError("polynomial dimension mismatch");
    RealPolynomial r(p.dim());
    for (const auto& [ga, ca] : p.terms()) {
        for (const auto& [gb, cb] : q.terms()) {
            MultiIndex g = ga;
            for (size_t j = 0; j < g.size(); ++j) g[j] += gb[j];
            r.add_term(g, ca * cb);
        }
    }
    return r;
}

namespace {

// d^a dbar^b applied to z^m zbar^n: falling factorials, exact.
bool wirtinger_term(const MultiIndex& a, const MultiIndex& b,
                    const MultiIndex& m, const MultiIndex& n,
                    MultiIndex& m_out, MultiIndex& n_out, double& factor) {
    factor = 1.0;
    m_out = m;
    n_out = n;
    for (size_t j = 0; j < m.size(); ++j) {
        if (m[j] < a[j] || n[j] < b[j]) return false;
        for (int e = 0; e < a[j]; ++e) factor *= static_cast<double>(m[j] - e);
        for (int e = 0; e < b[j]; ++e) factor *= static_cast<double>(n[j] - e);
        m_out[j] = m[j] - a[j];
        n_out[j] = n[j] - b[j];
    }
    return true;
}

}  // namespace

BiPolynomial apply_diff(const BiPolynomial& op, const BiPolynomial& target) {
    if (op.dim() != target.dim())
        throw DimensionError("bipolynomial dimension mismatch");
    BiPolynomial r(op.dim());
    for (const auto& [kop, cop] : op.terms()) {
        for (const auto& [kt, ct] : target.terms()) {
            MultiIndex m2, n2;
            double factor = 1.0;
            if (!wirtinger_term(kop.first, kop.second, kt.first, kt.second, m2,
                                n2, factor))
                continue;
            r.add_term(m2, n2, cop * ct * factor);
        }
    }
    return r;
}

RealPolynomial apply_diff(const RealPolynomial& op, const RealPolynomial& target) {
    if (op.dim() != target.dim())
        throw DimensionError("polynomial dimension mismatch");
    RealPolynomial r(op.dim());
    for (const auto& [gop, cop] : op.terms()) {
        RealPolynomial d = target.derivative(gop);
        r = r + d * cop;
    }
    return r;
}

RealPolynomial complexify(const BiPolynomial& p) {
    const int d = p.dim();
    const int D = 2 * d;
    // z_j = x_{2j-1} + i x_{2j}, zbar_j = x_{2j-1} - i x_{2j}
    RealPolynomial out(D);
    for (const auto& [key, c] : p.terms()) {
        RealPolynomial term = RealPolynomial::constant(D, c);
        for (int j = 0; j < d; ++j) {
            RealPolynomial re = RealPolynomial::variable(D, 2 * j);
            RealPolynomial im = RealPolynomial::variable(D, 2 * j + 1);
            RealPolynomial zj = re + im * Complex(0.0, 1.0);
            RealPolynomial zbj = re + im * Complex(0.0, -1.0);
            for (int e = 0; e < key.first[static_cast<size_t>(j)]; ++e)
                term = multiply(term, zj);
            for (int e = 0; e < key.second[static_cast<size_t>(j)]; ++e)
                term = multiply(term, zbj);
        }
        out = out + term;
    }
    return out;
}

BiPolynomial vandermonde_poly(int N) {
    if (N < 1) throw ValidationError("vandermonde_poly requires N >= 1");
    BiPolynomial v = BiPolynomial::constant(N, 1.0);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            v = multiply(v, BiPolynomial::variable(N, i) -
                                BiPolynomial::variable(N, j));
    return v;
}

}  // namespace finrank
