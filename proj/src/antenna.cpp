// SPDX-License-Identifier: Apache-2.0
#include "corridor/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corridor/error.hpp"

namespace corridor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void AntennaConfig::validate() const {
    auto require = [](bool ok, const char* field) {
        if (!ok) throw ConfigError(std::string("antenna.") + field + " out of range");
    };
    require(n_h >= 1, "n_h");
    require(n_v >= 1, "n_v");
    require(d_h > 0.0, "d_h");
    require(d_v > 0.0, "d_v");
    require(theta_3db > 0.0, "theta_3db");
    require(phi_3db > 0.0, "phi_3db");
    require(a_m > 0.0, "a_m");
    require(sl_av > 0.0, "sl_av");
    require(wavelength > 0.0, "wavelength");
    require(std::isfinite(g_e_max), "g_e_max");
    require(std::isfinite(theta_tilt), "theta_tilt");
}

// The 3GPP cuts are written with degree-valued beamwidths; convert here.
double element_gain_vertical(double theta, const AntennaConfig& cfg) noexcept {
    const double r = (rad2deg(theta) - 90.0) / rad2deg(cfg.theta_3db);
    return -std::min(12.0 * r * r, cfg.sl_av);
}

double element_gain_horizontal(double phi, const AntennaConfig& cfg) noexcept {
    const double r = rad2deg(phi) / rad2deg(cfg.phi_3db);
    return -std::min(12.0 * r * r, cfg.a_m);
}

double element_gain(double theta, double phi, const AntennaConfig& cfg) noexcept {
    const double attenuation = -(element_gain_vertical(theta, cfg) + element_gain_horizontal(phi, cfg));
    return cfg.g_e_max - std::min(attenuation, cfg.a_m);
}

ComplexVector steering_vector(const SteeringDirection& dir, const AntennaConfig& cfg) {
    const double u = cfg.d_h * std::sin(dir.theta) * std::sin(dir.phi);
    const double v = cfg.d_v * std::cos(dir.theta);
    ComplexVector out;
    out.reserve(static_cast<std::size_t>(cfg.element_count()));
    for (int m = 0; m < cfg.n_h; ++m)
        for (int n = 0; n < cfg.n_v; ++n) out.push_back(std::polar(1.0, kTwoPi * (m * u + n * v)));
    return out;
}

ComplexVector beamforming_vector(double phi_scan, const AntennaConfig& cfg) {
    const double u = cfg.d_h * std::sin(phi_scan) * std::cos(cfg.theta_tilt);
    const double v = cfg.d_v * std::sin(cfg.theta_tilt);
    const double amp = 1.0 / std::sqrt(static_cast<double>(cfg.element_count()));
    ComplexVector out;
    out.reserve(static_cast<std::size_t>(cfg.element_count()));
    for (int m = 0; m < cfg.n_h; ++m)
        for (int n = 0; n < cfg.n_v; ++n) out.push_back(std::polar(amp, -kTwoPi * (m * u - n * v)));
    return out;
}

double array_gain(const SteeringDirection& dir, double phi_scan, const AntennaConfig& cfg) {
    // The product separates into horizontal and vertical geometric sums:
    // sum_m sum_n e^{j2pi(m*a + n*b)} = (sum_m e^{j2pi m a}) (sum_n e^{j2pi n b}).
    const double a = cfg.d_h * (std::sin(dir.theta) * std::sin(dir.phi) - std::sin(phi_scan) * std::cos(cfg.theta_tilt));
    const double b = cfg.d_v * (std::cos(dir.theta) + std::sin(cfg.theta_tilt));
    std::complex<double> sh{0.0, 0.0};
    std::complex<double> sv{0.0, 0.0};
    for (int m = 0; m < cfg.n_h; ++m) sh += std::polar(1.0, kTwoPi * m * a);
    for (int n = 0; n < cfg.n_v; ++n) sv += std::polar(1.0, kTwoPi * n * b);
    const double power = std::norm(sh * sv) / static_cast<double>(cfg.element_count());
    if (!(power > 0.0)) return cfg.gain_floor_db;
    return std::max(10.0 * std::log10(power), cfg.gain_floor_db);
}

double total_gain(const SteeringDirection& dir, double phi_scan, const AntennaConfig& cfg) {
    return element_gain(dir.theta, dir.phi, cfg) + array_gain(dir, phi_scan, cfg);
}

double max_total_gain(const AntennaConfig& cfg) noexcept {
    return cfg.g_e_max + 10.0 * std::log10(static_cast<double>(cfg.element_count()));
}

}  // namespace corridor
