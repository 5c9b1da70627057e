// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace corridor {

inline constexpr double deg2rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Uniform planar array with a 3GPP sectorized element pattern.
/// Spacings are in wavelengths; angles are radians.
struct AntennaConfig {
    int n_h = 4;
    int n_v = 4;
    double d_h = 0.5;
    double d_v = 0.5;
    double g_e_max = -8.0;            // dBi
    double theta_3db = deg2rad(65.0);  // elevation beamwidth
    double phi_3db = deg2rad(90.0);    // azimuth beamwidth
    double a_m = 30.0;                 // front-to-back ratio, dB
    double sl_av = 30.0;               // vertical side-lobe limit, dB
    double theta_tilt = deg2rad(15.0);
    double wavelength = 299792458.0 / 3.5e9;  // m
    double gain_floor_db = -400.0;            // returned instead of -inf

    [[nodiscard]] int element_count() const noexcept { return n_h * n_v; }

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Direction in the BS-local frame (theta zenith angle, phi relative azimuth).
struct SteeringDirection {
    double theta = std::numbers::pi / 2;
    double phi = 0.0;
};

using ComplexVector = std::vector<std::complex<double>>;

/// Vertical element cut, dB in [-sl_av, 0].
[[nodiscard]] double element_gain_vertical(double theta, const AntennaConfig& cfg) noexcept;

/// Horizontal element cut, dB in [-a_m, 0].
[[nodiscard]] double element_gain_horizontal(double phi, const AntennaConfig& cfg) noexcept;

/// Combined element pattern in dBi; peaks at g_e_max on the horizon boresight.
[[nodiscard]] double element_gain(double theta, double phi, const AntennaConfig& cfg) noexcept;

/// Entries of the steering row vector for `dir`, unit modulus, flattened
/// row-major over (horizontal index, vertical index).
[[nodiscard]] ComplexVector steering_vector(const SteeringDirection& dir, const AntennaConfig& cfg);

/// Unit-norm beamforming weights for horizontal scan `phi_scan` and the
/// configured downtilt. Same flattening as steering_vector.
[[nodiscard]] ComplexVector beamforming_vector(double phi_scan, const AntennaConfig& cfg);

/// 10*log10(|v . w|^2), floored at cfg.gain_floor_db.
[[nodiscard]] double array_gain(const SteeringDirection& dir, double phi_scan, const AntennaConfig& cfg);

/// Element gain plus array gain, dBi.
[[nodiscard]] double total_gain(const SteeringDirection& dir, double phi_scan, const AntennaConfig& cfg);

/// Upper bound on total_gain: g_e_max + 10*log10(n_h*n_v).
[[nodiscard]] double max_total_gain(const AntennaConfig& cfg) noexcept;

}  // namespace corridor
