// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corridor/config.hpp"
#include "corridor/error.hpp"
#include "corridor/experiment.hpp"
#include "corridor/report.hpp"

using namespace corridor;

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string allocator;
    std::string channel;
    std::string allocation_channel;
    std::string import_path;
    std::vector<int> uavs;
    std::vector<double> altitudes;
    std::optional<int> replications;
    int threads = 1;
    double theta_deg = 90.0;
    double scan_deg = 0.0;
    double step_deg = 1.0;
};

ScenarioConfig build_config(const Options& o) {
    ScenarioConfig c = o.config_path.empty() ? ScenarioConfig{} : load_scenario(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (!o.allocator.empty()) c.allocator = parse_allocator(o.allocator);
    if (!o.channel.empty()) c.channel_hf.kind = parse_channel_kind(o.channel);
    if (!o.allocation_channel.empty()) c.allocation_channel = parse_allocation_channel(o.allocation_channel);
    if (!o.import_path.empty()) c.channel_hf.import_path = o.import_path;
    if (o.replications) c.replications = *o.replications;
    return c;
}

void print_summary(const std::vector<ExperimentResult>& rs) {
    for (const auto& r : rs)
        std::printf("%-10s alloc-on=%-11s M=%-3d alt=%-6g reps=%-3zu mean=%.6g Mbps sd=%.6g digest=%s\n",
                    std::string(to_string(r.config.allocator)).c_str(),
                    std::string(to_string(r.config.allocation_channel)).c_str(), r.config.uav_count,
                    r.config.corridor.altitude, r.replications.size(), r.mean_rate_bps / 1e6,
                    r.stddev_rate_bps / 1e6, r.config_digest.c_str());
}

void report_written(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
}

int cmd_run(const Options& o) {
    auto c = build_config(o);
    if (o.uavs.size() > 1 || o.altitudes.size() > 1) throw ConfigError("run takes a single --uavs/--altitudes value; use sweep");
    if (!o.uavs.empty()) c.uav_count = o.uavs.front();
    if (!o.altitudes.empty()) c.corridor.altitude = o.altitudes.front();
    const std::vector<ExperimentResult> rs{run_scenario(c, o.threads)};
    print_summary(rs);
    report_written(emit_reports(rs, o.out_dir));
    for (const auto& rep : rs.front().replications)
        for (const auto& v : rep.violations)
            std::fprintf(stderr, "replication %d: %s %s\n", rep.index, v.constraint.c_str(), v.detail.c_str());
    return 0;
}

int cmd_sweep(const Options& o) {
    if (o.uavs.empty() && o.altitudes.empty()) throw ConfigError("sweep needs --uavs and/or --altitudes");
    const auto c = build_config(o);
    std::vector<ExperimentResult> rs;
    if (!o.uavs.empty()) {
        const std::vector<double> values(o.uavs.begin(), o.uavs.end());
        for (auto& r : sweep(c, SweepAxis::UavCount, values, o.threads)) rs.push_back(std::move(r));
    }
    if (!o.altitudes.empty())
        for (auto& r : sweep(c, SweepAxis::Altitude, o.altitudes, o.threads)) rs.push_back(std::move(r));
    print_summary(rs);
    report_written(emit_reports(rs, o.out_dir));
    return 0;
}

int cmd_bench(const Options& o) {
    const auto c = build_config(o);
    const std::vector<int> sizes = o.uavs.empty() ? std::vector<int>{10, 20, 30, 40} : o.uavs;
    const auto rows = benchmark(c, sizes, o.threads);
    const auto csv = benchmark_csv(rows);
    std::cout << csv;
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / "bench.csv";
    write_text_file(path, csv);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

int cmd_gain_sweep(const Options& o) {
    const auto c = build_config(o);
    const auto rows = gain_sweep(c.antenna, deg2rad(o.theta_deg), deg2rad(o.scan_deg), deg2rad(o.step_deg));
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / "gain_sweep.csv";
    write_text_file(path, gain_sweep_csv(rows));
    std::printf("wrote %s (%zu rows)\n", path.string().c_str(), rows.size());
    return 0;
}

int cmd_validate(const Options& o) {
    const auto c = build_config(o);
    c.validate();
    std::printf("ok: %d UAVs, %zu BSs, %d beams, digest %s\n", c.uav_count, c.bss.size(), c.codebook.n_beams,
                config_digest(c).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV corridor BS/beam association experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--config", o.config_path, "Scenario JSON file")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "Base seed");
    app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    app.add_option("--allocator", o.allocator, "two_stage | random | closest_bs");
    app.add_option("--channel", o.channel, "Evaluation channel provider: few_ray | statistical | import");
    app.add_option("--allocation-channel", o.allocation_channel, "Channel the allocator sees: hf | lf | statistical");
    app.add_option("--import-path", o.import_path, "Channel tensor file for --channel import");
    app.add_option("--uavs", o.uavs, "UAV count(s), comma separated")->delimiter(',');
    app.add_option("--altitudes", o.altitudes, "Altitude(s) in meters, comma separated")->delimiter(',');
    app.add_option("--replications", o.replications, "Replications per scenario");
    app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    auto* run = app.add_subcommand("run", "Run one scenario and write reports");
    auto* sw = app.add_subcommand("sweep", "Sweep UAV count and/or altitude");
    auto* bench = app.add_subcommand("bench", "Time the allocators over UAV counts");
    auto* gain = app.add_subcommand("gain-sweep", "Dump antenna gain versus azimuth as CSV");
    gain->add_option("--theta-deg", o.theta_deg, "Zenith angle of the UAV")->capture_default_str();
    gain->add_option("--scan-deg", o.scan_deg, "Beam scan angle")->capture_default_str();
    gain->add_option("--step-deg", o.step_deg, "Azimuth step")->capture_default_str();
    auto* val = app.add_subcommand("validate-config", "Check a scenario file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(o);
        if (*sw) return cmd_sweep(o);
        if (*bench) return cmd_bench(o);
        if (*gain) return cmd_gain_sweep(o);
        if (*val) return cmd_validate(o);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
