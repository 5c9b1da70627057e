// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corridor/allocator.hpp"
#include "corridor/config.hpp"
#include "corridor/evaluator.hpp"

namespace corridor {

struct ReplicationResult {
    int index = 0;
    std::uint64_t seed = 0;
    ThroughputReport report;
    std::int64_t stage1_evals = 0;
    std::vector<ConstraintViolation> violations;
    StageTimings timings;  // wall clock, excluded from results.json
};

struct ExperimentResult {
    ScenarioConfig config;
    std::string config_digest;
    std::vector<ReplicationResult> replications;
    double mean_rate_bps = 0.0;    // mean over replications of the per-UAV mean
    double stddev_rate_bps = 0.0;  // sample standard deviation of the same
    StageTimings mean_timings;
};

/// Seed of replication r; shared by every scenario built from the same base
/// seed so allocator comparisons are paired.
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t base_seed, int r) noexcept;

/// One replication: HF channel, allocation-side channel, allocator,
/// feasibility check, and scoring on the HF channel.
[[nodiscard]] ReplicationResult run_replication(const ScenarioConfig& cfg, int r, int threads = 1);

/// Validates `cfg` and runs all replications (in parallel when threads > 1).
[[nodiscard]] ExperimentResult run_scenario(const ScenarioConfig& cfg, int threads = 1);

enum class SweepAxis { UavCount, Altitude };

[[nodiscard]] SweepAxis parse_sweep_axis(std::string_view s);

/// One ExperimentResult per value, all using the base seed schedule.
[[nodiscard]] std::vector<ExperimentResult> sweep(const ScenarioConfig& base, SweepAxis axis,
                                                  std::span<const double> values, int threads = 1);

struct BenchmarkRow {
    int uav_count = 0;
    double stage1_s = 0.0;
    double stage2_s = 0.0;
    double total_s = 0.0;
    std::int64_t stage1_evals = 0;
    double random_s = 0.0;
    double closest_bs_s = 0.0;
};

/// Times the two-stage allocator (and the two heuristics) at each UAV count
/// on replication 0's channel.
[[nodiscard]] std::vector<BenchmarkRow> benchmark(const ScenarioConfig& cfg, std::span<const int> uav_counts,
                                                  int threads = 1);

}  // namespace corridor
