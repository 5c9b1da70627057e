// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "corridor/allocator.hpp"
#include "corridor/antenna.hpp"
#include "corridor/channel.hpp"
#include "corridor/geometry.hpp"

namespace corridor {

/// Which UAV's association gates an interference term. `Interferer` uses the
/// interfering UAV m' (the default); `Victim` uses the victim's own indicators
/// literally, which is identically zero for feasible assignments.
enum class InterfererIndexing { Interferer, Victim };

/// Transmit power of a beam: the full P, or P split evenly across N beams.
enum class PowerSplit { PerBeam, DividedAmongBeams };

[[nodiscard]] std::string_view to_string(InterfererIndexing v) noexcept;
[[nodiscard]] std::string_view to_string(PowerSplit v) noexcept;
[[nodiscard]] InterfererIndexing parse_interferer_indexing(std::string_view s);
[[nodiscard]] PowerSplit parse_power_split(std::string_view s);

struct EvaluationConfig {
    int num_rrbs = 1;
    std::vector<std::uint8_t> rrb_schedule;  // (m, l, r); empty means all ones
    InterfererIndexing indexing = InterfererIndexing::Interferer;
    PowerSplit power_split = PowerSplit::PerBeam;

    [[nodiscard]] bool scheduled(int m, int l, int r, int n_bs) const;
    void validate(int m, int l) const;
};

/// Everything about the deployment the scorer needs besides the channel.
struct Scene {
    const GeometryGrid* geometry = nullptr;
    AntennaConfig antenna;
    RfConstants rf;
    int n_beams = 16;

    [[nodiscard]] double beam_power_w(PowerSplit split) const;
};

/// Interference power (W) at UAV m on RRB r from beams of other BSs.
[[nodiscard]] double interference_at(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                                     const EvaluationConfig& eval = {}, int rrb = 0);

/// Linear SINR of UAV m on its serving link for RRB r.
[[nodiscard]] double sinr(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                          const EvaluationConfig& eval = {}, int rrb = 0);

/// Shannon rate in bit/s summed over the RRBs UAV m is scheduled on.
[[nodiscard]] double throughput(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                                const EvaluationConfig& eval = {});

struct ThroughputReport {
    std::vector<double> per_uav_sinr;
    std::vector<double> per_uav_rate_bps;
    double total_rate_bps = 0.0;
    double mean_rate_bps = 0.0;
    std::uint64_t seed = 0;
    std::string config_digest;

    friend bool operator==(const ThroughputReport&, const ThroughputReport&) = default;
};

[[nodiscard]] ThroughputReport evaluate_all(const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                                            const EvaluationConfig& eval = {});

struct ConstraintViolation {
    std::string constraint;  // "C1".."C4", "consistency" or "shape"
    std::string detail;
};

/// Checks C1-C4 and beta/x consistency. Never throws.
[[nodiscard]] std::vector<ConstraintViolation> validate(const Assignment& a, int m, int l, int n);

}  // namespace corridor
