// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "corridor/antenna.hpp"
#include "corridor/random.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace corridor;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const double kMaxArrayDb = 10.0 * std::log10(16.0);
}  // namespace

TEST_CASE("vertical element cut") {
    AntennaConfig cfg;
    CHECK(element_gain_vertical(deg2rad(90), cfg) == Approx(0.0));
    CHECK(element_gain_vertical(deg2rad(155), cfg) == Approx(-12.0).epsilon(1e-12));
    CHECK(element_gain_vertical(0.0, cfg) == Approx(-23.00591715976331).epsilon(1e-12));
}

TEST_CASE("horizontal element cut") {
    AntennaConfig cfg;
    CHECK(element_gain_horizontal(0.0, cfg) == Approx(0.0));
    CHECK(element_gain_horizontal(deg2rad(90), cfg) == Approx(-12.0).epsilon(1e-12));
    CHECK(element_gain_horizontal(kPi, cfg) == Approx(-30.0));
}

TEST_CASE("combined element pattern") {
    AntennaConfig cfg;
    CHECK(element_gain(deg2rad(90), 0.0, cfg) == Approx(-8.0));
    CHECK(element_gain(deg2rad(90), kPi, cfg) == Approx(-38.0));
    CHECK(element_gain(deg2rad(155), deg2rad(90), cfg) == Approx(-32.0).epsilon(1e-12));
}

TEST_CASE("element cuts are bounded and even") {
    AntennaConfig cfg;
    auto rng = make_rng(11, {});
    for (int i = 0; i < 1000; ++i) {
        const double off = kPi / 2 * uniform01(rng);
        const double av_plus = element_gain_vertical(kPi / 2 + off, cfg);
        const double av_minus = element_gain_vertical(kPi / 2 - off, cfg);
        CHECK(av_plus <= 0.0);
        CHECK(av_plus >= -cfg.sl_av);
        CHECK(av_plus == Approx(av_minus).epsilon(1e-12));
        const double phi = kPi * uniform01(rng);
        const double ah = element_gain_horizontal(phi, cfg);
        CHECK(ah <= 0.0);
        CHECK(ah >= -cfg.a_m);
        CHECK(ah == element_gain_horizontal(-phi, cfg));
    }
}

TEST_CASE("element pattern peaks at the horizon boresight") {
    AntennaConfig cfg;
    double best = -1e300;
    double best_theta = 0;
    double best_phi = 0;
    for (int i = 0; i <= 180; ++i)
        for (int j = 0; j <= 360; ++j) {
            const double t = deg2rad(i);
            const double p = deg2rad(j - 180.0);
            const double g = element_gain(t, p, cfg);
            CHECK(g <= cfg.g_e_max + 1e-9);
            if (g > best) {
                best = g;
                best_theta = t;
                best_phi = p;
            }
        }
    CHECK(best == Approx(-8.0).epsilon(1e-12));
    CHECK(best_theta == Approx(kPi / 2));
    CHECK(best_phi == Approx(0.0));
}

TEST_CASE("steering vector") {
    AntennaConfig cfg;
    for (const auto& c : steering_vector({kPi / 2, 0.0}, cfg)) {
        CHECK(c.real() == Approx(1.0));
        CHECK(c.imag() == Approx(0.0).epsilon(1e-12));
    }
    AntennaConfig two = cfg;
    two.n_h = 2;
    two.n_v = 1;
    const auto v = steering_vector({kPi / 2, deg2rad(30)}, two);
    REQUIRE(v.size() == 2);
    CHECK(std::arg(v[0]) == Approx(0.0));
    CHECK(std::arg(v[1]) == Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("beamforming vector") {
    AntennaConfig flat;
    flat.theta_tilt = 0.0;
    for (const auto& w : beamforming_vector(0.0, flat)) CHECK(std::abs(w - std::complex<double>(0.25, 0.0)) < 1e-15);

    AntennaConfig two;
    two.n_h = 2;
    two.n_v = 1;
    const auto w = beamforming_vector(kPi / 2, two);
    CHECK(std::remainder(std::arg(w[1]) - std::arg(w[0]), 2 * kPi) == Approx(-3.0345454797823876).epsilon(1e-12));
}

TEST_CASE("unit modulus and unit norm on random inputs") {
    AntennaConfig cfg;
    auto rng = make_rng(12, {});
    for (int i = 0; i < 200; ++i) {
        const SteeringDirection dir{kPi * uniform01(rng), 2 * kPi * uniform01(rng) - kPi};
        for (const auto& c : steering_vector(dir, cfg)) CHECK(std::fabs(std::abs(c) - 1.0) < 1e-12);
        double norm2 = 0.0;
        for (const auto& c : beamforming_vector(2 * kPi * uniform01(rng) - kPi, cfg)) norm2 += std::norm(c);
        CHECK(std::fabs(std::sqrt(norm2) - 1.0) < 1e-12);
    }
}

TEST_CASE("array gain: aligned beam reaches the Cauchy-Schwarz bound") {
    AntennaConfig cfg;
    // Vertical phases cancel at theta = 90 deg + tilt; horizontal ones when phi = scan.
    const double scan = deg2rad(20);
    const SteeringDirection dir{kPi / 2 + cfg.theta_tilt, scan};
    CHECK(array_gain(dir, scan, cfg) == Approx(kMaxArrayDb).epsilon(1e-12));
    CHECK(total_gain(dir, scan, cfg) == Approx(-8.0 + kMaxArrayDb + element_gain_vertical(dir.theta, cfg) +
                                               element_gain_horizontal(scan, cfg)));

    AntennaConfig horizon = cfg;
    horizon.theta_tilt = 0.0;
    CHECK(total_gain({kPi / 2, 0.0}, 0.0, horizon) == Approx(4.041199826559248).epsilon(1e-12));
}

TEST_CASE("single element array has no array gain") {
    AntennaConfig one;
    one.n_h = 1;
    one.n_v = 1;
    auto rng = make_rng(13, {});
    for (int i = 0; i < 100; ++i) {
        const SteeringDirection dir{kPi * uniform01(rng), 2 * kPi * uniform01(rng) - kPi};
        CHECK(std::fabs(array_gain(dir, 2 * kPi * uniform01(rng) - kPi, one)) < 1e-12);
    }
    CHECK(total_gain({kPi / 2, 0.0}, 0.3, one) == Approx(-8.0));
}

TEST_CASE("array gain matches the literal element sum and respects the bound") {
    AntennaConfig cfg;
    auto rng = make_rng(14, {});
    for (int i = 0; i < 1000; ++i) {
        const double theta = kPi * uniform01(rng);
        const double phi = 2 * kPi * uniform01(rng) - kPi;
        const double scan = 2 * kPi * uniform01(rng) - kPi;
        const double fast = array_gain({theta, phi}, scan, cfg);
        CHECK(fast <= kMaxArrayDb + 1e-9);
        const double direct = oracle::array_gain_direct(theta, phi, scan, 4, 4, 0.5, 0.5, cfg.theta_tilt);
        if (direct > -100.0) CHECK(fast == Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("total gain behaviour") {
    AntennaConfig cfg;
    for (double scan : {-3.0, -1.0, 0.0, 1.0, 3.0}) CHECK(total_gain({kPi / 2, kPi}, scan, cfg) <= -38.0 + kMaxArrayDb + 1e-9);

    auto rng = make_rng(15, {});
    for (int i = 0; i < 500; ++i) {
        const SteeringDirection dir{kPi * uniform01(rng), 2 * kPi * uniform01(rng) - kPi};
        const double scan = 2 * kPi * uniform01(rng) - kPi;
        const double g0 = total_gain(dir, scan, cfg);
        const double g1 = total_gain(dir, scan + 1e-6, cfg);
        const double peak = std::pow(10.0, max_total_gain(cfg) / 10.0);
        CHECK(std::fabs(std::pow(10.0, g0 / 10.0) - std::pow(10.0, g1 / 10.0)) < 1e-4 * peak);
        CHECK(g0 <= max_total_gain(cfg) + 1e-9);
    }
}

TEST_CASE("zero array response clamps to the floor") {
    AntennaConfig cfg;
    cfg.n_h = 2;
    cfg.n_v = 1;
    cfg.theta_tilt = 0.0;
    // Two elements half a turn apart cancel: 1 + e^{j pi} = 0.
    const double g = array_gain({kPi / 2, kPi / 2}, 0.0, cfg);
    CHECK(g >= cfg.gain_floor_db);
    CHECK(g < -200.0);
}
