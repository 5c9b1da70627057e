// SPDX-License-Identifier: Apache-2.0
#include "corridor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "corridor/error.hpp"

namespace corridor {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json report_to_json(const ThroughputReport& r) {
    return {{"per_uav_sinr", r.per_uav_sinr},
            {"per_uav_rate_bps", r.per_uav_rate_bps},
            {"total_rate_bps", r.total_rate_bps},
            {"mean_rate_bps", r.mean_rate_bps},
            {"seed", r.seed},
            {"config_digest", r.config_digest}};
}

ThroughputReport report_from_json(const json& j) {
    ThroughputReport r;
    r.per_uav_sinr = j.at("per_uav_sinr").get<std::vector<double>>();
    r.per_uav_rate_bps = j.at("per_uav_rate_bps").get<std::vector<double>>();
    r.total_rate_bps = j.at("total_rate_bps").get<double>();
    r.mean_rate_bps = j.at("mean_rate_bps").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_digest = j.at("config_digest").get<std::string>();
    return r;
}

}  // namespace

json to_json(const ExperimentResult& r) {
    json reps = json::array();
    for (const auto& rep : r.replications) {
        json violations = json::array();
        for (const auto& v : rep.violations) violations.push_back({{"constraint", v.constraint}, {"detail", v.detail}});
        reps.push_back({{"index", rep.index},
                        {"seed", rep.seed},
                        {"stage1_evals", rep.stage1_evals},
                        {"violations", violations},
                        {"report", report_to_json(rep.report)}});
    }
    return {{"config", to_json(r.config)},
            {"config_digest", r.config_digest},
            {"allocator", to_string(r.config.allocator)},
            {"allocation_channel", to_string(r.config.allocation_channel)},
            {"uav_count", r.config.uav_count},
            {"altitude_m", r.config.corridor.altitude},
            {"mean_rate_bps", r.mean_rate_bps},
            {"stddev_rate_bps", r.stddev_rate_bps},
            {"replications", reps}};
}

ExperimentResult experiment_from_json(const json& j) {
    ExperimentResult r;
    try {
        r.config = scenario_from_json(j.at("config"));
        r.config_digest = j.at("config_digest").get<std::string>();
        r.mean_rate_bps = j.at("mean_rate_bps").get<double>();
        r.stddev_rate_bps = j.at("stddev_rate_bps").get<double>();
        for (const auto& rj : j.at("replications")) {
            ReplicationResult rep;
            rep.index = rj.at("index").get<int>();
            rep.seed = rj.at("seed").get<std::uint64_t>();
            rep.stage1_evals = rj.at("stage1_evals").get<std::int64_t>();
            for (const auto& v : rj.at("violations"))
                rep.violations.push_back({v.at("constraint").get<std::string>(), v.at("detail").get<std::string>()});
            rep.report = report_from_json(rj.at("report"));
            r.replications.push_back(std::move(rep));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed results document: ") + e.what());
    }
    return r;
}

std::string results_json(std::span<const ExperimentResult> results) {
    json experiments = json::array();
    for (const auto& r : results) experiments.push_back(to_json(r));
    json doc = {{"format", "corridor-results"}, {"version", 1}, {"experiments", experiments}};
    return doc.dump(2) + "\n";
}

std::vector<ExperimentResult> parse_results_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed results document: ") + e.what());
    }
    std::vector<ExperimentResult> out;
    for (const auto& e : doc.at("experiments")) out.push_back(experiment_from_json(e));
    return out;
}

std::string summary_csv(std::span<const ExperimentResult> results) {
    std::string out =
        "allocator,allocation_channel,hf_channel,uav_count,altitude_m,replications,mean_mbps,stddev_mbps,"
        "stage1_s,stage2_s,config_digest\n";
    for (const auto& r : results) {
        const auto& c = r.config;
        out += std::string(to_string(c.allocator)) + ',' + std::string(to_string(c.allocation_channel)) + ',' +
               std::string(to_string(c.channel_hf.kind)) + ',' + std::to_string(c.uav_count) + ',' +
               fmt17(c.corridor.altitude) + ',' + std::to_string(r.replications.size()) + ',' +
               fmt17(r.mean_rate_bps / 1e6) + ',' + fmt17(r.stddev_rate_bps / 1e6) + ',' +
               fmt17(r.mean_timings.stage1_s) + ',' + fmt17(r.mean_timings.stage2_s) + ',' + r.config_digest + '\n';
    }
    return out;
}

std::string timings_json(std::span<const ExperimentResult> results) {
    json arr = json::array();
    for (const auto& r : results) {
        json reps = json::array();
        for (const auto& rep : r.replications)
            reps.push_back({{"index", rep.index}, {"stage1_s", rep.timings.stage1_s}, {"stage2_s", rep.timings.stage2_s}});
        arr.push_back({{"config_digest", r.config_digest},
                       {"allocator", to_string(r.config.allocator)},
                       {"uav_count", r.config.uav_count},
                       {"replications", reps}});
    }
    return arr.dump(2) + "\n";
}

std::vector<GainSweepRow> gain_sweep(const AntennaConfig& cfg, double theta, double phi_scan, double step) {
    if (!(step > 0.0)) throw ConfigError("gain sweep step must be positive");
    std::vector<GainSweepRow> rows;
    const double pi = std::numbers::pi;
    const auto count = static_cast<int>(std::floor(2.0 * pi / step + 1e-9));
    for (int i = 0; i <= count; ++i) {
        const double phi = std::min(-pi + i * step, pi);
        const SteeringDirection dir{theta, phi};
        const double element = element_gain(theta, phi, cfg);
        const double array = array_gain(dir, phi_scan, cfg);
        rows.push_back({phi, theta, phi_scan, element, array, element + array});
    }
    return rows;
}

std::string gain_sweep_csv(std::span<const GainSweepRow> rows) {
    std::string out = "phi_deg,theta_deg,scan_deg,element_gain_db,array_gain_db,total_gain_dbi\n";
    for (const auto& r : rows)
        out += fmt17(rad2deg(r.phi)) + ',' + fmt17(rad2deg(r.theta)) + ',' + fmt17(rad2deg(r.phi_scan)) + ',' +
               fmt17(r.element_db) + ',' + fmt17(r.array_db) + ',' + fmt17(r.total_db) + '\n';
    return out;
}

std::string benchmark_csv(std::span<const BenchmarkRow> rows) {
    std::string out = "uav_count,stage1_s,stage2_s,total_s,stage1_evals,random_s,closest_bs_s\n";
    for (const auto& r : rows)
        out += std::to_string(r.uav_count) + ',' + fmt17(r.stage1_s) + ',' + fmt17(r.stage2_s) + ',' +
               fmt17(r.total_s) + ',' + std::to_string(r.stage1_evals) + ',' + fmt17(r.random_s) + ',' +
               fmt17(r.closest_bs_s) + '\n';
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(path.string() + ": cannot open for writing");
    os << text;
    if (!os) throw Error(path.string() + ": write failed");
}

std::vector<std::filesystem::path> emit_reports(std::span<const ExperimentResult> results,
                                                const std::filesystem::path& out_dir,
                                                const std::vector<GainSweepRow>* sweep_rows) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(out_dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written{out_dir / "results.json", out_dir / "summary.csv",
                                               out_dir / "timings.json"};
    write_text_file(written[0], results_json(results));
    write_text_file(written[1], summary_csv(results));
    write_text_file(written[2], timings_json(results));
    if (sweep_rows != nullptr) {
        written.push_back(out_dir / "gain_sweep.csv");
        write_text_file(written.back(), gain_sweep_csv(*sweep_rows));
    }
    return written;
}

}  // namespace corridor
