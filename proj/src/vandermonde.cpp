#include "finrank/vandermonde.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "finrank/errors.hpp"
#include "finrank/rng.hpp"

namespace finrank {

namespace {

// power sum p_k = z_1^k + ... + z_N^k
BiPolynomial power_sum(int N, int k) {
    BiPolynomial p = BiPolynomial::zero(N);
    for (int j = 0; j < N; ++j) {
        MultiIndex alpha(static_cast<size_t>(N), 0);
        alpha[static_cast<size_t>(j)] = k;
        p.add_term(alpha, MultiIndex(static_cast<size_t>(N), 0), 1.0);
    }
    return p;
}

BiPolynomial swap_adjacent(const BiPolynomial& p, int j) {
    BiPolynomial out = BiPolynomial::zero(p.dim());
    for (const auto& [key, c] : p.terms()) {
        MultiIndex alpha = key.first, beta = key.second;
        std::swap(alpha[static_cast<size_t>(j)], alpha[static_cast<size_t>(j) + 1]);
        std::swap(beta[static_cast<size_t>(j)], beta[static_cast<size_t>(j) + 1]);
        out.add_term(alpha, beta, c);
    }
    return out;
}

}  // namespace

BiPolynomial symmetric_sample(int N, int degree, std::uint64_t seed) {
    if (N < 2) throw ValidationError("symmetric_sample: N must be >= 2");
    if (degree < 0) throw ValidationError("symmetric_sample: negative degree");
    Rng rng(seed);
    // random combination of products of power sums, organized by the
    // partitions of each total degree up to the bound
    BiPolynomial out = BiPolynomial::constant(N, Complex(rng.normal(), rng.normal()));
    std::vector<std::vector<int>> partitions;
    std::vector<int> current;
    auto emit = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            partitions.push_back(current);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    for (int d = 1; d <= degree; ++d) emit(emit, d, d);
    for (const auto& partition : partitions) {
        BiPolynomial term = BiPolynomial::constant(N, Complex(rng.normal(), rng.normal()));
        for (int part : partition) term = multiply(term, power_sum(N, part));
        out = out + term;
    }
    return out;
}

bool is_symmetric(const BiPolynomial& p) {
    for (int j = 0; j + 1 < p.dim(); ++j) {
        const BiPolynomial diff = p - swap_adjacent(p, j);
        if (!diff.is_zero()) return false;
    }
    return true;
}

Complex vandermonde_derivative_at_zero(const BiPolynomial& H, int N) {
    if (H.dim() != N)
        throw DimensionError("vandermonde check: variable count mismatch");
    if (!H.is_holomorphic())
        throw ValidationError("vandermonde check: input must be holomorphic");
    const BiPolynomial result = apply_diff(vandermonde_poly(N), H);
    return result.evaluate(std::vector<Complex>(static_cast<size_t>(N), 0.0));
}

Complex check_annihilation(const BiPolynomial& H1, const BiPolynomial& H2,
                           int N) {
    if (N < 2 || N > 4)
        throw ValidationError("vandermonde check: N must be in [2, 4]");
    if (H1.dim() != N || H2.dim() != N)
        throw DimensionError("vandermonde check: variable count mismatch");
    if (!H1.is_holomorphic() || !H2.is_holomorphic())
        throw ValidationError("vandermonde check: inputs must be holomorphic");
    const BiPolynomial V = vandermonde_poly(N);
    const BiPolynomial H = multiply(H1, H2.conjugated());
    const BiPolynomial once = apply_diff(V, H);
    const BiPolynomial twice = apply_diff(V.conjugated(), once);
    return twice.evaluate(std::vector<Complex>(static_cast<size_t>(N), 0.0));
}

}  // namespace finrank
