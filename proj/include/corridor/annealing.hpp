// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace corridor {

/// Budget and schedule of the scalar dual-annealing search.
///
/// Temperature follows the generalized (Tsallis) schedule
///   T(t) = T0 (2^(qv-1) - 1) / ((t+2)^(qv-1) - 1)
/// with visiting parameter qv. A local refinement (bounded Brent search with
/// at most `t_local` iterations) runs each time the global best improves.
/// The chain restarts from a random point after `restart_stall` iterations
/// without an improvement.
struct AnnealerConfig {
    int t_global = 200;
    int t_local = 50;
    double initial_temperature = 5230.0;
    double visiting_param = 2.62;
    int restart_stall = 20;
    std::uint64_t seed = 1;

    void validate() const;
};

struct ScalarOptimum {
    double x = 0.0;
    double value = 0.0;
    std::int64_t evals = 0;
};

/// Maximizes `objective` over [lo, hi]. Deterministic for a given seed.
/// Always returns the best point seen.
[[nodiscard]] ScalarOptimum dual_annealing_maximize(const std::function<double(double)>& objective, double lo,
                                                    double hi, const AnnealerConfig& cfg, std::uint64_t seed);

}  // namespace corridor
