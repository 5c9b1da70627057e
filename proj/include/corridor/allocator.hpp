// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corridor/annealing.hpp"
#include "corridor/antenna.hpp"
#include "corridor/channel.hpp"
#include "corridor/geometry.hpp"

namespace corridor {

/// Azimuth interval (lo, hi].
struct Sector {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double phi) const noexcept { return phi > lo && phi <= hi; }
    [[nodiscard]] double center() const noexcept { return 0.5 * (lo + hi); }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// Beam n of a BS owns the n-th equal azimuth sector of (-pi, pi].
struct BeamCodebook {
    int n_beams = 16;
    double tilt = deg2rad(15.0);

    [[nodiscard]] Sector sector(int n) const;
    void validate() const;
};

/// Finds the scan angle inside `sector` that maximizes total_gain(dir, .).
/// The result always lies in the half-open sector.
[[nodiscard]] ScalarOptimum optimize_scan_angle(const SteeringDirection& dir, const Sector& sector,
                                                const AntennaConfig& cfg, const AnnealerConfig& ann,
                                                std::uint64_t seed);

inline ScalarOptimum optimize_scan_angle(const SteeringDirection& dir, const Sector& sector,
                                         const AntennaConfig& cfg, const AnnealerConfig& ann) {
    return optimize_scan_angle(dir, sector, cfg, ann, ann.seed);
}

struct BeamGain {
    double phi_star = 0.0;
    double gain_db = 0.0;
};

/// Stage-1 output: optimal scan angle and gain per (UAV, BS, beam).
struct BeamGainTable {
    int m = 0;
    int l = 0;
    int n = 0;
    std::vector<BeamGain> entries;  // row-major (m, l, n)
    std::int64_t stage1_evals = 0;

    [[nodiscard]] std::size_t index(int mi, int li, int ni) const noexcept {
        return (static_cast<std::size_t>(mi) * l + li) * n + ni;
    }
    [[nodiscard]] const BeamGain& at(int mi, int li, int ni) const { return entries.at(index(mi, li, ni)); }
};

/// Runs optimize_scan_angle for every triplet. Triplet (m, l, n) draws from
/// a substream of ann.seed keyed by its indices, so the table does not
/// depend on `threads`.
[[nodiscard]] BeamGainTable build_beam_gain_table(const GeometryGrid& geometry, const BeamCodebook& codebook,
                                                  const AntennaConfig& cfg, const AnnealerConfig& ann,
                                                  int threads = 1);

[[nodiscard]] BeamGainTable build_beam_gain_table(std::span<const Position3D> uavs,
                                                  std::span<const BaseStationSite> bss,
                                                  const BeamCodebook& codebook, const AntennaConfig& cfg,
                                                  const AnnealerConfig& ann, int threads = 1);

/// Effective received power per triplet, P |h(m,l)|^2 10^(G/10), watts.
struct UtilityTensor {
    int m = 0;
    int l = 0;
    int n = 0;
    std::vector<double> values;

    [[nodiscard]] std::size_t index(int mi, int li, int ni) const noexcept {
        return (static_cast<std::size_t>(mi) * l + li) * n + ni;
    }
    [[nodiscard]] double at(int mi, int li, int ni) const { return values.at(index(mi, li, ni)); }
};

[[nodiscard]] UtilityTensor build_utility(const BeamGainTable& table, const LinkGainTensor& gains,
                                          const RfConstants& rf);

/// UAV -> BS association (beta), UAV -> beam selection (x) and the scan
/// angle each serving beam uses.
struct Assignment {
    int m = 0;
    int l = 0;
    int n = 0;
    std::vector<std::uint8_t> beta;  // (m, l)
    std::vector<std::uint8_t> x;     // (m, l, n)
    std::vector<double> phi_scan_chosen;

    Assignment() = default;
    Assignment(int m_, int l_, int n_);

    [[nodiscard]] std::uint8_t& beta_at(int mi, int li) { return beta.at(static_cast<std::size_t>(mi) * l + li); }
    [[nodiscard]] std::uint8_t beta_at(int mi, int li) const { return beta.at(static_cast<std::size_t>(mi) * l + li); }
    [[nodiscard]] std::uint8_t& x_at(int mi, int li, int ni) {
        return x.at((static_cast<std::size_t>(mi) * l + li) * n + ni);
    }
    [[nodiscard]] std::uint8_t x_at(int mi, int li, int ni) const {
        return x.at((static_cast<std::size_t>(mi) * l + li) * n + ni);
    }

    /// Sets beta and x for UAV mi to (li, ni).
    void assign(int mi, int li, int ni);

    /// First (l, n) with beta*x = 1 for UAV mi, or {-1, -1}.
    struct Link {
        int bs = -1;
        int beam = -1;
    };
    [[nodiscard]] Link serving(int mi) const;

    /// Sum of utility over the selected triplets.
    [[nodiscard]] double total_utility(const UtilityTensor& util) const;
};

/// Hungarian solution of the flattened M x (L*N) problem; column j maps to
/// (j / N, j % N). Throws InfeasibleError when M > L*N.
[[nodiscard]] Assignment solve_assignment(const UtilityTensor& util);

/// Copies phi_star of each selected triplet into phi_scan_chosen.
void attach_scan_angles(Assignment& a, const BeamGainTable& table);

/// Uses each selected beam's sector center as its scan angle.
void attach_nominal_scan_angles(Assignment& a, const BeamCodebook& codebook);

struct StageTimings {
    double stage1_s = 0.0;
    double stage2_s = 0.0;
};

struct TwoStageResult {
    Assignment assignment;
    BeamGainTable table;
    UtilityTensor utility;
    StageTimings timings;
};

/// Stage 1 (beam gain table) then Stage 2 (utility + Hungarian).
[[nodiscard]] TwoStageResult allocate_two_stage(const GeometryGrid& geometry, const LinkGainTensor& gains,
                                                const BeamCodebook& codebook, const AntennaConfig& cfg,
                                                const RfConstants& rf, const AnnealerConfig& ann, int threads = 1);

/// Stage 2 only, for a precomputed table.
[[nodiscard]] TwoStageResult allocate_two_stage(const BeamGainTable& table, const LinkGainTensor& gains,
                                                const RfConstants& rf);

/// Uniformly random injective UAV -> (BS, beam) mapping.
[[nodiscard]] Assignment allocate_random(int m, int l, int n, std::uint64_t seed);

/// Nearest BS (lowest index on ties) with a free beam; best free beam by
/// utility on that BS. UAVs are processed in index order.
[[nodiscard]] Assignment allocate_closest_bs(std::span<const Position3D> uavs, std::span<const BaseStationSite> bss,
                                             const UtilityTensor& util);

/// Message used wherever M > L*N is rejected.
[[nodiscard]] std::string infeasibility_message(int m, int l, int n);

}  // namespace corridor
