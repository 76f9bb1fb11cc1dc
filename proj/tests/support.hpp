// Shared helpers for the test suites: seeded generators and small oracles
// kept independent of the implementation paths they check.
#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "mubx/matrix.hpp"
#include "mubx/simplex.hpp"

namespace mubx::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_hermitian(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = n(gen);
        for (int c = r + 1; c < dim; ++c) {
            const cplx z{n(gen), n(gen)};
            m(r, c) = z;
            m(c, r) = std::conj(z);
        }
    }
    return m;
}

inline Matrix random_matrix(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = cplx{n(gen), n(gen)};
    return m;
}

inline std::vector<cplx> random_pure_state(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> v(dim);
    double norm2 = 0.0;
    for (cplx& z : v) {
        z = cplx{n(gen), n(gen)};
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& z : v) z *= inv;
    return v;
}

// convex mixture of up to max_terms random product states
inline Matrix random_separable_state(int d, std::mt19937_64& gen, int max_terms = 4) {
    std::uniform_int_distribution<int> terms_dist(1, max_terms);
    const int terms = terms_dist(gen);
    std::vector<double> w(terms);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (double& x : w) {
        x = -std::log(1.0 - u(gen));  // exponential -> Dirichlet weights
        total += x;
    }
    Matrix rho(d * d);
    for (int t = 0; t < terms; ++t) {
        const std::vector<cplx> a = random_pure_state(d, gen);
        const std::vector<cplx> b = random_pure_state(d, gen);
        const std::vector<cplx> v = kron_vec(a, b);
        rho += (w[t] / total) * outer(v, v);
    }
    return rho;
}

// random normalized Bell coefficients, optionally nonnegative
inline SimplexCoefficients random_coefficients(int d, std::mt19937_64& gen,
                                               bool nonnegative = false) {
    SimplexCoefficients c;
    c.d = d;
    c.c.resize(static_cast<size_t>(d) * d);
    std::normal_distribution<double> n(0.0, 1.0);
    double total = 0.0;
    for (double& x : c.c) {
        x = nonnegative ? std::abs(n(gen)) : n(gen);
        total += x;
    }
    // renormalize; resample in the rare case the signed sum is tiny
    if (std::abs(total) < 0.1) return random_coefficients(d, gen, nonnegative);
    for (double& x : c.c) x /= total;
    return c;
}

// exhaustive assignment maximum, the oracle for optimal_labeling
inline double brute_force_best_labeling(const std::vector<double>& p, int d,
                                        std::vector<int>& best) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    double best_value = -1.0;
    do {
        double v = 0.0;
        for (int i = 0; i < d; ++i) v += p[static_cast<size_t>(i) * d + perm[i]];
        if (v > best_value) {
            best_value = v;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best_value;
}

}  // namespace mubx::test
