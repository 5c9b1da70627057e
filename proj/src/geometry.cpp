// SPDX-License-Identifier: Apache-2.0
#include "corridor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "corridor/error.hpp"

namespace corridor {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double a) noexcept {
    double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

std::vector<Position3D> generate_corridor(const CorridorSpec& spec, int m) {
    if (!(spec.radius > 0.0)) throw ConfigError("corridor radius must be positive, got " + std::to_string(spec.radius));
    if (!(spec.altitude > 0.0))
        throw ConfigError("corridor altitude must be positive, got " + std::to_string(spec.altitude));
    if (m < 1) throw ConfigError("corridor needs at least one waypoint, got " + std::to_string(m));

    std::vector<Position3D> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double a = 2.0 * kPi * k / m;
        out.push_back({spec.center.x + spec.radius * std::cos(a), spec.center.y + spec.radius * std::sin(a),
                       spec.altitude});
    }
    return out;
}

double distance(const Position3D& a, const Position3D& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

LinkGeometry link_geometry(const BaseStationSite& bs, const Position3D& uav) {
    const double dx = uav.x - bs.position.x;
    const double dy = uav.y - bs.position.y;
    const double dz = uav.z - bs.position.z;
    const double d = std::hypot(dx, dy, dz);
    if (!(d > 0.0)) throw GeometryError("UAV coincides with BS " + std::to_string(bs.id));

    LinkGeometry g;
    g.distance_3d = d;
    g.theta = std::acos(std::clamp(dz / d, -1.0, 1.0));
    const double horizontal = std::hypot(dx, dy);
    // Azimuth is undefined straight above/below the array; pin it to boresight.
    g.phi = horizontal > 1e-12 * d ? wrap_angle(std::atan2(dy, dx) - bs.boresight_azimuth) : 0.0;
    return g;
}

Position3D position_from_link(const BaseStationSite& bs, const LinkGeometry& g) noexcept {
    const double az = bs.boresight_azimuth + g.phi;
    const double h = g.distance_3d * std::sin(g.theta);
    return {bs.position.x + h * std::cos(az), bs.position.y + h * std::sin(az),
            bs.position.z + g.distance_3d * std::cos(g.theta)};
}

GeometryGrid::GeometryGrid(std::span<const Position3D> uavs, std::span<const BaseStationSite> bss)
    : m_(static_cast<int>(uavs.size())), l_(static_cast<int>(bss.size())) {
    links_.reserve(uavs.size() * bss.size());
    for (const auto& u : uavs)
        for (const auto& b : bss) links_.push_back(link_geometry(b, u));
}

void aim_boresights(std::span<BaseStationSite> bss, const Position3D& target) {
    for (auto& b : bss) {
        const double dx = target.x - b.position.x;
        const double dy = target.y - b.position.y;
        b.boresight_azimuth = (dx == 0.0 && dy == 0.0) ? 0.0 : std::atan2(dy, dx);
    }
}

}  // namespace corridor
