#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "finrank/errors.hpp"

namespace finrank {

// Exponent vector of a monomial; length equals the ambient dimension.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& g) {
    return std::accumulate(g.begin(), g.end(), 0);
}

// Graded lexicographic comparison: lower total degree first, then lex.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    const int oa = order(a), ob = order(b);
    if (oa != ob) return oa < ob;
    return a < b;
}

// All multi-indices of the given dimension with total degree <= deg,
// in graded-lex order.
inline std::vector<MultiIndex> indices_up_to(int dim, int deg) {
    if (dim < 1) throw DimensionError("multi-index dimension must be >= 1");
    std::vector<MultiIndex> out;
    MultiIndex idx(static_cast<size_t>(dim), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dim - 1) {
            idx[static_cast<size_t>(pos)] = remaining;
            out.push_back(idx);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            idx[static_cast<size_t>(pos)] = e;
            self(self, pos + 1, remaining - e);
        }
        idx[static_cast<size_t>(pos)] = 0;
    };
    for (int total = 0; total <= deg; ++total) rec(rec, 0, total);
    return out;
}

// All multi-indices of exact total degree deg, lexicographic within the level.
inline std::vector<MultiIndex> indices_of_degree(int dim, int deg) {
    std::vector<MultiIndex> out;
    for (auto& m : indices_up_to(dim, deg))
        if (order(m) == deg) out.push_back(std::move(m));
    return out;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline double multi_factorial(const MultiIndex& g) {
    double r = 1.0;
    for (int e : g) r *= factorial(e);
    return r;
}

}  // namespace finrank
