// SPDX-License-Identifier: Apache-2.0
#include "corridor/lsap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "corridor/error.hpp"

namespace corridor {

std::vector<int> solve_min_cost_assignment(std::span<const double> cost, int rows, int cols) {
    if (rows < 0 || cols < 0 || cost.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw DimensionError("cost matrix size does not match rows x cols");
    if (rows > cols)
        throw InfeasibleError("assignment needs rows <= cols, got " + std::to_string(rows) + " > " + std::to_string(cols));
    if (rows == 0) return {};

    double magnitude = 0.0;
    for (double c : cost) {
        if (!std::isfinite(c)) throw DimensionError("cost matrix contains non-finite entries");
        magnitude = std::max(magnitude, std::fabs(c));
    }
    const double sentinel = magnitude + 1.0;

    // 1-based square matrix; row 0 / column 0 are the virtual root.
    const int n = cols;
    auto a = [&](int i, int j) -> double {
        return i <= rows ? cost[static_cast<std::size_t>(i - 1) * cols + (j - 1)] : sentinel;
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);  // match[j] = row assigned to column j
    std::vector<double> minv(n + 1);
    std::vector<char> used(n + 1);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double reduced = a(i0, j) - u[i0] - v[j];
                if (reduced < minv[j]) {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(static_cast<std::size_t>(rows), -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] >= 1 && match[j] <= rows) row_to_col[static_cast<std::size_t>(match[j] - 1)] = j - 1;
    return row_to_col;
}

}  // namespace corridor
