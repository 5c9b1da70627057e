// SPDX-License-Identifier: Apache-2.0
#include "corridor/experiment.hpp"

#include <chrono>
#include <cmath>

#include "corridor/error.hpp"
#include "corridor/parallel.hpp"
#include "corridor/random.hpp"

namespace corridor {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Deployment {
    std::vector<Position3D> uavs;
    GeometryGrid geometry;
};

Deployment deploy(const ScenarioConfig& cfg) {
    Deployment d;
    d.uavs = generate_corridor(cfg.corridor, cfg.uav_count);
    d.geometry = GeometryGrid(d.uavs, cfg.bss);
    return d;
}

ChannelProviderSpec seeded(ChannelProviderSpec spec, std::uint64_t rep_seed, const char* tag) {
    spec.seed = derive_seed(rep_seed, {stream_tag(tag)});
    return spec;
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t base_seed, int r) noexcept {
    return derive_seed(base_seed, {stream_tag("replication"), static_cast<std::uint64_t>(r)});
}

ReplicationResult run_replication(const ScenarioConfig& cfg, int r, int threads) {
    const std::uint64_t rep_seed = replication_seed(cfg.seed, r);
    const auto dep = deploy(cfg);
    const int m = cfg.uav_count;
    const int l = static_cast<int>(cfg.bss.size());
    const int n = cfg.codebook.n_beams;

    const auto hf = generate_channel(dep.geometry, seeded(cfg.channel_hf, rep_seed, "hf"), cfg.rf);
    LinkGainTensor alloc_side;
    switch (cfg.allocation_channel) {
        case AllocationChannel::Hf: alloc_side = hf; break;
        case AllocationChannel::Lf:
            alloc_side = degrade(hf, cfg.channel_lf.ray_count, derive_seed(rep_seed, {stream_tag("lf")}));
            break;
        case AllocationChannel::Statistical:
            alloc_side = generate_statistical(dep.geometry, seeded(cfg.channel_model, rep_seed, "model"), cfg.rf);
            break;
    }

    AnnealerConfig ann = cfg.annealer;
    ann.seed = derive_seed(rep_seed, {stream_tag("anneal")});

    ReplicationResult out;
    out.index = r;
    out.seed = rep_seed;
    Assignment assignment;
    switch (cfg.allocator) {
        case AllocatorKind::TwoStage: {
            auto res = allocate_two_stage(dep.geometry, alloc_side, cfg.codebook, cfg.antenna, cfg.rf, ann, threads);
            assignment = std::move(res.assignment);
            out.stage1_evals = res.table.stage1_evals;
            out.timings = res.timings;
            break;
        }
        case AllocatorKind::Random: {
            const auto t0 = std::chrono::steady_clock::now();
            assignment = allocate_random(m, l, n, derive_seed(rep_seed, {stream_tag("random")}));
            attach_nominal_scan_angles(assignment, cfg.codebook);
            out.timings.stage2_s = seconds_since(t0);
            break;
        }
        case AllocatorKind::ClosestBs: {
            const auto t0 = std::chrono::steady_clock::now();
            const auto table = build_beam_gain_table(dep.geometry, cfg.codebook, cfg.antenna, ann, threads);
            out.timings.stage1_s = seconds_since(t0);
            const auto t1 = std::chrono::steady_clock::now();
            const auto util = build_utility(table, alloc_side, cfg.rf);
            assignment = allocate_closest_bs(dep.uavs, cfg.bss, util);
            attach_scan_angles(assignment, table);
            out.timings.stage2_s = seconds_since(t1);
            out.stage1_evals = table.stage1_evals;
            break;
        }
    }
    out.violations = validate(assignment, m, l, n);

    Scene scene{&dep.geometry, cfg.antenna, cfg.rf, n};
    out.report = evaluate_all(assignment, hf, scene, cfg.evaluation);
    out.report.seed = rep_seed;
    out.report.config_digest = config_digest(cfg);
    return out;
}

ExperimentResult run_scenario(const ScenarioConfig& cfg, int threads) {
    cfg.validate();
    ExperimentResult res;
    res.config = cfg;
    res.config_digest = config_digest(cfg);
    res.replications.resize(static_cast<std::size_t>(cfg.replications));
    const int inner = cfg.replications > 1 ? 1 : threads;
    parallel_for(res.replications.size(), cfg.replications > 1 ? threads : 1,
                 [&](std::size_t r) { res.replications[r] = run_replication(cfg, static_cast<int>(r), inner); });

    const double k = static_cast<double>(res.replications.size());
    for (const auto& rep : res.replications) {
        res.mean_rate_bps += rep.report.mean_rate_bps / k;
        res.mean_timings.stage1_s += rep.timings.stage1_s / k;
        res.mean_timings.stage2_s += rep.timings.stage2_s / k;
    }
    if (res.replications.size() > 1) {
        double ss = 0.0;
        for (const auto& rep : res.replications) ss += std::pow(rep.report.mean_rate_bps - res.mean_rate_bps, 2);
        res.stddev_rate_bps = std::sqrt(ss / (k - 1.0));
    }
    return res;
}

SweepAxis parse_sweep_axis(std::string_view s) {
    if (s == "uav_count" || s == "uavs") return SweepAxis::UavCount;
    if (s == "altitude" || s == "altitudes") return SweepAxis::Altitude;
    throw ConfigError("unknown sweep axis '" + std::string(s) + "' (expected uav_count or altitude)");
}

std::vector<ExperimentResult> sweep(const ScenarioConfig& base, SweepAxis axis, std::span<const double> values,
                                    int threads) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    std::vector<ExperimentResult> out;
    out.reserve(values.size());
    for (double v : values) {
        ScenarioConfig cfg = base;
        if (axis == SweepAxis::UavCount) {
            if (v < 1.0 || v != std::floor(v)) throw ConfigError("uav_count sweep values must be positive integers");
            cfg.uav_count = static_cast<int>(v);
        } else {
            cfg.corridor.altitude = v;
        }
        out.push_back(run_scenario(cfg, threads));
    }
    return out;
}

std::vector<BenchmarkRow> benchmark(const ScenarioConfig& cfg, std::span<const int> uav_counts, int threads) {
    std::vector<BenchmarkRow> rows;
    for (int m : uav_counts) {
        ScenarioConfig c = cfg;
        c.uav_count = m;
        c.validate();
        const std::uint64_t rep_seed = replication_seed(c.seed, 0);
        const auto dep = deploy(c);
        const auto hf = generate_channel(dep.geometry, seeded(c.channel_hf, rep_seed, "hf"), c.rf);
        AnnealerConfig ann = c.annealer;
        ann.seed = derive_seed(rep_seed, {stream_tag("anneal")});

        BenchmarkRow row;
        row.uav_count = m;
        const auto res = allocate_two_stage(dep.geometry, hf, c.codebook, c.antenna, c.rf, ann, threads);
        row.stage1_s = res.timings.stage1_s;
        row.stage2_s = res.timings.stage2_s;
        row.total_s = row.stage1_s + row.stage2_s;
        row.stage1_evals = res.table.stage1_evals;

        auto t0 = std::chrono::steady_clock::now();
        auto rnd = allocate_random(m, static_cast<int>(c.bss.size()), c.codebook.n_beams, rep_seed);
        attach_nominal_scan_angles(rnd, c.codebook);
        row.random_s = seconds_since(t0);

        // The heuristic reuses the Stage-1 utility; only its own pass is timed.
        t0 = std::chrono::steady_clock::now();
        auto near = allocate_closest_bs(dep.uavs, c.bss, res.utility);
        attach_scan_angles(near, res.table);
        row.closest_bs_s = seconds_since(t0);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace corridor
