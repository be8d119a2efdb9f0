#include "finrank/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "finrank/errors.hpp"

namespace finrank {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule compute(int n) {
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Chebyshev guess for the i-th root (descending), then Newton
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<size_t>(n - 1 - i)] =
            2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

std::map<int, QuadratureRule> cache;
std::mutex cache_mutex;

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
    if (order < 1) throw ValidationError("quadrature order must be >= 1");
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute(order)).first;
    return it->second;
}

QuadratureRule gauss_legendre_on(int order, double a, double b) {
    const QuadratureRule& base = gauss_legendre(order);
    QuadratureRule out;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    out.nodes.reserve(base.nodes.size());
    out.weights.reserve(base.weights.size());
    for (size_t i = 0; i < base.nodes.size(); ++i) {
        out.nodes.push_back(mid + half * base.nodes[i]);
        out.weights.push_back(half * base.weights[i]);
    }
    return out;
}

}  // namespace finrank
