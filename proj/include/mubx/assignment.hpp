// Exact linear assignment (Jonker-Volgenant style shortest augmenting paths).
#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace mubx {

// Minimizes sum_i cost[i*n + perm[i]] over permutations; returns the optimum
// and fills perm (row -> column).
inline double assignment_min(const std::vector<double>& cost, int n, std::vector<int>& perm) {
    if (n <= 0 || static_cast<int>(cost.size()) != n * n)
        throw std::invalid_argument("assignment_min: cost must be n x n");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    perm.assign(n, -1);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[j]) {
            perm[p[j] - 1] = j - 1;
            total += cost[(p[j] - 1) * n + (j - 1)];
        }
    }
    return total;
}

// Maximizes sum_i value[i*n + perm[i]].
inline double assignment_max(const std::vector<double>& value, int n, std::vector<int>& perm) {
    std::vector<double> negated(value.size());
    for (size_t i = 0; i < value.size(); ++i) negated[i] = -value[i];
    return -assignment_min(negated, n, perm);
}

}  // namespace mubx
