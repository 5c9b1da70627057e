// SPDX-License-Identifier: Apache-2.0
#include "corridor/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "corridor/error.hpp"

namespace corridor {

using nlohmann::json;

std::string_view to_string(AllocatorKind k) noexcept {
    switch (k) {
        case AllocatorKind::TwoStage: return "two_stage";
        case AllocatorKind::Random: return "random";
        case AllocatorKind::ClosestBs: return "closest_bs";
    }
    return "unknown";
}

std::string_view to_string(AllocationChannel c) noexcept {
    switch (c) {
        case AllocationChannel::Hf: return "hf";
        case AllocationChannel::Lf: return "lf";
        case AllocationChannel::Statistical: return "statistical";
    }
    return "unknown";
}

AllocatorKind parse_allocator(std::string_view s) {
    if (s == "two_stage") return AllocatorKind::TwoStage;
    if (s == "random") return AllocatorKind::Random;
    if (s == "closest_bs") return AllocatorKind::ClosestBs;
    throw ConfigError("unknown allocator '" + std::string(s) + "' (expected two_stage, random or closest_bs)");
}

AllocationChannel parse_allocation_channel(std::string_view s) {
    if (s == "hf") return AllocationChannel::Hf;
    if (s == "lf") return AllocationChannel::Lf;
    if (s == "statistical") return AllocationChannel::Statistical;
    throw ConfigError("unknown allocation channel '" + std::string(s) + "' (expected hf, lf or statistical)");
}

std::vector<BaseStationSite> ScenarioConfig::default_sites() {
    std::vector<BaseStationSite> sites{{1, {200.0, 200.0, 25.0}, 0.0},
                                       {2, {-200.0, 200.0, 25.0}, 0.0},
                                       {3, {-200.0, -200.0, 25.0}, 0.0},
                                       {4, {200.0, -200.0, 25.0}, 0.0}};
    aim_boresights(sites, {0.0, 0.0, 0.0});
    return sites;
}

void ScenarioConfig::validate() const {
    std::vector<std::string> problems;
    auto check = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            problems.emplace_back(e.what());
        }
    };
    check([&] { rf.validate(); });
    check([&] { antenna.validate(); });
    check([&] { codebook.validate(); });
    check([&] { channel_hf.validate(); });
    check([&] { channel_lf.validate(); });
    check([&] { channel_model.validate(); });
    check([&] { annealer.validate(); });
    if (!(corridor.radius > 0.0)) problems.emplace_back("corridor.radius must be positive");
    if (!(corridor.altitude > 0.0)) problems.emplace_back("corridor.altitude must be positive");
    if (uav_count < 1) problems.emplace_back("uav_count must be >= 1");
    if (replications < 1) problems.emplace_back("replications must be >= 1");
    if (bss.empty()) problems.emplace_back("base_stations must not be empty");
    for (std::size_t i = 0; i < bss.size(); ++i) {
        if (bss[i].id != static_cast<int>(i) + 1)
            problems.emplace_back("base_stations[" + std::to_string(i) + "].id must be " + std::to_string(i + 1));
        if (bss[i].position.z < 0.0)
            problems.emplace_back("base_stations[" + std::to_string(i) + "].z must be >= 0");
    }
    const int l = static_cast<int>(bss.size());
    if (uav_count >= 1 && l >= 1 && codebook.n_beams >= 1 && uav_count > l * codebook.n_beams)
        problems.push_back(infeasibility_message(uav_count, l, codebook.n_beams));
    check([&] { evaluation.validate(uav_count, l); });

    if (!problems.empty()) {
        std::string msg = "invalid scenario configuration:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
}

namespace {

json provider_to_json(const ChannelProviderSpec& p) {
    return {{"kind", to_string(p.kind)},
            {"ray_count", p.ray_count},
            {"rician_k_db", p.rician_k_db},
            {"import_path", p.import_path}};
}

ChannelProviderSpec provider_from_json(const json& j, ChannelProviderSpec p) {
    if (j.contains("kind")) p.kind = parse_channel_kind(j.at("kind").get<std::string>());
    p.ray_count = j.value("ray_count", p.ray_count);
    p.rician_k_db = j.value("rician_k_db", p.rician_k_db);
    p.import_path = j.value("import_path", p.import_path);
    return p;
}

// Degrees for the file, cut to 15 significant digits (15, not 14.999999999999998).
double file_degrees(double rad) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", rad2deg(rad));
    return std::strtod(buf, nullptr);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

json to_json(const ScenarioConfig& c) {
    json bss = json::array();
    for (const auto& b : c.bss)
        bss.push_back({{"id", b.id},
                       {"x", b.position.x},
                       {"y", b.position.y},
                       {"z", b.position.z},
                       {"boresight_deg", file_degrees(b.boresight_azimuth)}});
    return {
        {"seed", c.seed},
        {"replications", c.replications},
        {"uav_count", c.uav_count},
        {"allocator", to_string(c.allocator)},
        {"allocation_channel", to_string(c.allocation_channel)},
        {"rf",
         {{"carrier_hz", c.rf.carrier_hz},
          {"bandwidth_hz", c.rf.bandwidth_hz},
          {"tx_power_w", c.rf.tx_power_w},
          {"noise_power_w", c.rf.noise_power_w}}},
        {"antenna",
         {{"n_h", c.antenna.n_h},
          {"n_v", c.antenna.n_v},
          {"d_h", c.antenna.d_h},
          {"d_v", c.antenna.d_v},
          {"g_e_max_dbi", c.antenna.g_e_max},
          {"theta_3db_deg", file_degrees(c.antenna.theta_3db)},
          {"phi_3db_deg", file_degrees(c.antenna.phi_3db)},
          {"a_m_db", c.antenna.a_m},
          {"sl_av_db", c.antenna.sl_av},
          {"tilt_deg", file_degrees(c.antenna.theta_tilt)},
          {"gain_floor_db", c.antenna.gain_floor_db}}},
        {"codebook", {{"n_beams", c.codebook.n_beams}}},
        {"base_stations", bss},
        {"corridor",
         {{"center_x", c.corridor.center.x},
          {"center_y", c.corridor.center.y},
          {"radius", c.corridor.radius},
          {"altitude", c.corridor.altitude}}},
        {"channel_hf", provider_to_json(c.channel_hf)},
        {"channel_lf", provider_to_json(c.channel_lf)},
        {"channel_model", provider_to_json(c.channel_model)},
        {"annealer",
         {{"t_global", c.annealer.t_global},
          {"t_local", c.annealer.t_local},
          {"initial_temperature", c.annealer.initial_temperature},
          {"visiting_param", c.annealer.visiting_param},
          {"restart_stall", c.annealer.restart_stall}}},
        {"evaluation",
         {{"num_rrbs", c.evaluation.num_rrbs},
          {"rrb_schedule", c.evaluation.rrb_schedule},
          {"interferer_indexing", to_string(c.evaluation.indexing)},
          {"power_split", to_string(c.evaluation.power_split)}}},
    };
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig c;
    try {
        read(j, "seed", c.seed);
        read(j, "replications", c.replications);
        read(j, "uav_count", c.uav_count);
        if (j.contains("allocator")) c.allocator = parse_allocator(j.at("allocator").get<std::string>());
        if (j.contains("allocation_channel"))
            c.allocation_channel = parse_allocation_channel(j.at("allocation_channel").get<std::string>());
        if (j.contains("rf")) {
            const auto& r = j.at("rf");
            read(r, "carrier_hz", c.rf.carrier_hz);
            read(r, "bandwidth_hz", c.rf.bandwidth_hz);
            read(r, "tx_power_w", c.rf.tx_power_w);
            read(r, "noise_power_w", c.rf.noise_power_w);
        }
        if (j.contains("antenna")) {
            const auto& a = j.at("antenna");
            read(a, "n_h", c.antenna.n_h);
            read(a, "n_v", c.antenna.n_v);
            read(a, "d_h", c.antenna.d_h);
            read(a, "d_v", c.antenna.d_v);
            read(a, "g_e_max_dbi", c.antenna.g_e_max);
            read(a, "a_m_db", c.antenna.a_m);
            read(a, "sl_av_db", c.antenna.sl_av);
            read(a, "gain_floor_db", c.antenna.gain_floor_db);
            if (a.contains("theta_3db_deg")) c.antenna.theta_3db = deg2rad(a.at("theta_3db_deg").get<double>());
            if (a.contains("phi_3db_deg")) c.antenna.phi_3db = deg2rad(a.at("phi_3db_deg").get<double>());
            if (a.contains("tilt_deg")) c.antenna.theta_tilt = deg2rad(a.at("tilt_deg").get<double>());
        }
        if (j.contains("codebook")) read(j.at("codebook"), "n_beams", c.codebook.n_beams);
        if (j.contains("corridor")) {
            const auto& k = j.at("corridor");
            read(k, "center_x", c.corridor.center.x);
            read(k, "center_y", c.corridor.center.y);
            read(k, "radius", c.corridor.radius);
            read(k, "altitude", c.corridor.altitude);
        }
        if (j.contains("base_stations")) {
            c.bss.clear();
            for (const auto& b : j.at("base_stations")) {
                BaseStationSite s;
                s.id = b.value("id", static_cast<int>(c.bss.size()) + 1);
                s.position = {b.at("x").get<double>(), b.at("y").get<double>(), b.value("z", 25.0)};
                if (b.contains("boresight_deg")) {
                    s.boresight_azimuth = deg2rad(b.at("boresight_deg").get<double>());
                } else {
                    aim_boresights(std::span(&s, 1), c.corridor.center);
                }
                c.bss.push_back(s);
            }
        }
        if (j.contains("channel_hf")) c.channel_hf = provider_from_json(j.at("channel_hf"), c.channel_hf);
        if (j.contains("channel_lf")) c.channel_lf = provider_from_json(j.at("channel_lf"), c.channel_lf);
        if (j.contains("channel_model")) c.channel_model = provider_from_json(j.at("channel_model"), c.channel_model);
        if (j.contains("annealer")) {
            const auto& a = j.at("annealer");
            read(a, "t_global", c.annealer.t_global);
            read(a, "t_local", c.annealer.t_local);
            read(a, "initial_temperature", c.annealer.initial_temperature);
            read(a, "visiting_param", c.annealer.visiting_param);
            read(a, "restart_stall", c.annealer.restart_stall);
        }
        if (j.contains("evaluation")) {
            const auto& e = j.at("evaluation");
            read(e, "num_rrbs", c.evaluation.num_rrbs);
            read(e, "rrb_schedule", c.evaluation.rrb_schedule);
            if (e.contains("interferer_indexing"))
                c.evaluation.indexing = parse_interferer_indexing(e.at("interferer_indexing").get<std::string>());
            if (e.contains("power_split"))
                c.evaluation.power_split = parse_power_split(e.at("power_split").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario configuration: ") + e.what());
    }
    c.antenna.wavelength = c.rf.wavelength();
    c.codebook.tilt = c.antenna.theta_tilt;
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open scenario configuration");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

std::string config_digest(const ScenarioConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace corridor
