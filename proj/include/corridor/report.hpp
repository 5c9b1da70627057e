// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corridor/antenna.hpp"
#include "corridor/experiment.hpp"

namespace corridor {

/// Deterministic part of an experiment (no wall-clock timings).
[[nodiscard]] nlohmann::json to_json(const ExperimentResult& r);
[[nodiscard]] ExperimentResult experiment_from_json(const nlohmann::json& j);

/// results.json document. Byte-identical for identical configs and seeds.
[[nodiscard]] std::string results_json(std::span<const ExperimentResult> results);
[[nodiscard]] std::vector<ExperimentResult> parse_results_json(const std::string& text);

/// One row per scenario; floats printed with 17 significant digits.
[[nodiscard]] std::string summary_csv(std::span<const ExperimentResult> results);

/// Wall-clock stage timings per scenario and replication.
[[nodiscard]] std::string timings_json(std::span<const ExperimentResult> results);

struct GainSweepRow {
    double phi = 0.0;
    double theta = 0.0;
    double phi_scan = 0.0;
    double element_db = 0.0;
    double array_db = 0.0;
    double total_db = 0.0;
};

/// Gain versus UAV azimuth for a fixed zenith angle and scan angle.
[[nodiscard]] std::vector<GainSweepRow> gain_sweep(const AntennaConfig& cfg, double theta, double phi_scan,
                                                   double step);
[[nodiscard]] std::string gain_sweep_csv(std::span<const GainSweepRow> rows);

[[nodiscard]] std::string benchmark_csv(std::span<const BenchmarkRow> rows);

/// Writes results.json, summary.csv, timings.json and, when `sweep_rows` is
/// non-null, gain_sweep.csv into out_dir (created if missing). Returns the
/// written paths.
std::vector<std::filesystem::path> emit_reports(std::span<const ExperimentResult> results,
                                                const std::filesystem::path& out_dir,
                                                const std::vector<GainSweepRow>* sweep_rows = nullptr);

/// Writes `text` to `path`, throwing corridor::Error with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace corridor
