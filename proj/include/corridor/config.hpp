// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corridor/allocator.hpp"
#include "corridor/annealing.hpp"
#include "corridor/antenna.hpp"
#include "corridor/channel.hpp"
#include "corridor/evaluator.hpp"
#include "corridor/geometry.hpp"

namespace corridor {

enum class AllocatorKind { TwoStage, Random, ClosestBs };
enum class AllocationChannel { Hf, Lf, Statistical };

[[nodiscard]] std::string_view to_string(AllocatorKind k) noexcept;
[[nodiscard]] std::string_view to_string(AllocationChannel c) noexcept;
[[nodiscard]] AllocatorKind parse_allocator(std::string_view s);
[[nodiscard]] AllocationChannel parse_allocation_channel(std::string_view s);

/// A complete experiment. Defaults reproduce the nominal setup: 3.5 GHz,
/// 30 MHz, 10 W, 0.3 W noise, 4x4 arrays, 16 beams, 4 BSs on a 400 m
/// square, 20 UAVs on a 200 m circle at 100 m.
///
/// Seeds of the channel providers are not taken from the file; each
/// replication derives them from `seed`.
struct ScenarioConfig {
    RfConstants rf;
    AntennaConfig antenna;
    BeamCodebook codebook;
    std::vector<BaseStationSite> bss = default_sites();
    CorridorSpec corridor;
    int uav_count = 20;
    ChannelProviderSpec channel_hf;
    ChannelProviderSpec channel_lf{ChannelKind::FewRay, 100, 3.0, 1, {}};
    ChannelProviderSpec channel_model{ChannelKind::Statistical, 1'000'000, 3.0, 1, {}};
    AllocatorKind allocator = AllocatorKind::TwoStage;
    AllocationChannel allocation_channel = AllocationChannel::Hf;
    AnnealerConfig annealer;
    EvaluationConfig evaluation;
    std::uint64_t seed = 1;
    int replications = 1;

    /// 4 BSs, 25 m masts, on the corners of a 400 m square around the origin,
    /// boresights aimed at the origin.
    [[nodiscard]] static std::vector<BaseStationSite> default_sites();

    /// Collects every problem; throws ConfigError listing all of them.
    void validate() const;
};

[[nodiscard]] nlohmann::json to_json(const ScenarioConfig& cfg);
/// Missing keys keep their defaults. Angles in the file are degrees.
[[nodiscard]] ScenarioConfig scenario_from_json(const nlohmann::json& j);
[[nodiscard]] ScenarioConfig load_scenario(const std::filesystem::path& path);

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
[[nodiscard]] std::string config_digest(const ScenarioConfig& cfg);

}  // namespace corridor
