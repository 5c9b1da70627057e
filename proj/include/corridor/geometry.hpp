// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace corridor {

/// Cartesian position in meters: x east, y north, z altitude above ground.
struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position3D&, const Position3D&) = default;
};

struct BaseStationSite {
    int id = 1;  // 1-based, contiguous
    Position3D position;
    double boresight_azimuth = 0.0;  // rad, array normal in the horizontal plane
};

/// Circular flight path. Only center.x/center.y are used.
struct CorridorSpec {
    Position3D center;
    double radius = 200.0;
    double altitude = 100.0;
    int num_waypoints = 20;
};

/// BS-local spherical coordinates of a UAV.
///
/// theta is the zenith angle at the BS (0 = straight up, pi/2 = horizon);
/// phi is the horizontal bearing relative to the BS boresight, in (-pi, pi].
struct LinkGeometry {
    double distance_3d = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Wraps an angle to (-pi, pi].
[[nodiscard]] double wrap_angle(double a) noexcept;

/// `m` waypoints evenly spaced on the corridor circle; waypoint k sits at
/// angle 2*pi*k/m measured from the east axis. Throws ConfigError on a
/// non-positive radius/altitude or m < 1.
[[nodiscard]] std::vector<Position3D> generate_corridor(const CorridorSpec& spec, int m);

/// Throws GeometryError when the UAV coincides with the BS.
[[nodiscard]] LinkGeometry link_geometry(const BaseStationSite& bs, const Position3D& uav);

/// Inverse of link_geometry: rebuilds the UAV position in the world frame.
[[nodiscard]] Position3D position_from_link(const BaseStationSite& bs, const LinkGeometry& g) noexcept;

/// Row-major (m, l) grid of LinkGeometry for every UAV/BS pair.
class GeometryGrid {
public:
    GeometryGrid() = default;
    GeometryGrid(std::span<const Position3D> uavs, std::span<const BaseStationSite> bss);

    [[nodiscard]] int uav_count() const noexcept { return m_; }
    [[nodiscard]] int bs_count() const noexcept { return l_; }
    [[nodiscard]] const LinkGeometry& at(int m, int l) const { return links_.at(static_cast<std::size_t>(m) * l_ + l); }
    [[nodiscard]] std::span<const LinkGeometry> links() const noexcept { return links_; }

private:
    int m_ = 0;
    int l_ = 0;
    std::vector<LinkGeometry> links_;
};

/// Euclidean distance between two points.
[[nodiscard]] double distance(const Position3D& a, const Position3D& b) noexcept;

/// Points each BS boresight at `target` in the horizontal plane.
void aim_boresights(std::span<BaseStationSite> bss, const Position3D& target);

}  // namespace corridor
