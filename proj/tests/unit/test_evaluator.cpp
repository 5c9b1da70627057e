// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "corridor/evaluator.hpp"
#include "corridor/random.hpp"
#include "doctest.h"

using namespace corridor;
using doctest::Approx;

namespace {

AntennaConfig isotropic_element() {
    AntennaConfig a;
    a.n_h = 1;
    a.n_v = 1;
    a.g_e_max = 0.0;
    return a;
}

LinkGainTensor power_tensor(int m, int l, std::vector<double> p) {
    LinkGainTensor t;
    t.m = m;
    t.l = l;
    t.power_gains = std::move(p);
    return t;
}

// Two BSs facing each other on the x axis; each UAV sits on the boresight
// of both, so a single-element pattern gives 0 dB everywhere it matters.
struct FacingPair {
    std::vector<Position3D> uavs{{100, 0, 0}, {300, 0, 0}};
    std::vector<BaseStationSite> bss{{1, {0, 0, 0}, 0.0}, {2, {200, 0, 0}, std::numbers::pi}};
    GeometryGrid grid{uavs, bss};
};

}  // namespace

TEST_CASE("single link with unit SINR") {
    const std::vector<Position3D> uav{{100, 0, 0}};
    const std::vector<BaseStationSite> bs{{1, {0, 0, 0}, 0.0}};
    const GeometryGrid grid(uav, bs);
    Scene scene{&grid, isotropic_element(), RfConstants{}, 1};
    Assignment a(1, 1, 1);
    a.assign(0, 0, 0);

    CHECK(sinr(0, a, power_tensor(1, 1, {3e-2}), scene) == Approx(1.0).epsilon(1e-12));
    CHECK(throughput(0, a, power_tensor(1, 1, {3e-2}), scene) == Approx(30e6).epsilon(1e-12));
    CHECK(throughput(0, a, power_tensor(1, 1, {9e-2}), scene) == Approx(60e6).epsilon(1e-12));
    CHECK(sinr(0, a, power_tensor(1, 1, {0.0}), scene) == 0.0);
    CHECK(throughput(0, a, power_tensor(1, 1, {0.0}), scene) == 0.0);

    const double base = sinr(0, a, power_tensor(1, 1, {7e-3}), scene);
    scene.rf.noise_power_w *= 2;
    CHECK(sinr(0, a, power_tensor(1, 1, {7e-3}), scene) == Approx(base / 2).epsilon(1e-15));
}

TEST_CASE("one interfering term by hand") {
    FacingPair f;
    Scene scene{&f.grid, isotropic_element(), RfConstants{}, 1};
    Assignment a(2, 2, 1);
    a.assign(0, 0, 0);
    a.assign(1, 1, 0);
    const auto h = power_tensor(2, 2, {2e-3, 5e-4, 1e-4, 4e-3});

    CHECK(interference_at(0, a, h, scene) == Approx(10 * 5e-4).epsilon(1e-12));
    CHECK(interference_at(1, a, h, scene) == Approx(10 * 1e-4).epsilon(1e-12));
    CHECK(sinr(0, a, h, scene) == Approx(10 * 2e-3 / (10 * 5e-4 + 0.3)).epsilon(1e-12));

    EvaluationConfig literal;
    literal.indexing = InterfererIndexing::Victim;
    CHECK(interference_at(0, a, h, scene, literal) == 0.0);

    EvaluationConfig divided;
    divided.power_split = PowerSplit::DividedAmongBeams;
    scene.n_beams = 4;
    CHECK(interference_at(0, a, h, scene, divided) == Approx(10.0 / 4 * 5e-4).epsilon(1e-12));
}

TEST_CASE("RRB schedule gates interference and sums rate") {
    FacingPair f;
    Scene scene{&f.grid, isotropic_element(), RfConstants{}, 1};
    Assignment a(2, 2, 1);
    a.assign(0, 0, 0);
    a.assign(1, 1, 0);
    const auto h = power_tensor(2, 2, {2e-3, 5e-4, 1e-4, 4e-3});

    EvaluationConfig two;
    two.num_rrbs = 2;
    CHECK(throughput(0, a, h, scene, two) == Approx(2 * throughput(0, a, h, scene)).epsilon(1e-12));

    EvaluationConfig gated;
    gated.num_rrbs = 1;
    gated.rrb_schedule = {1, 0, 0, 0};  // only UAV 0 on BS 0 is scheduled
    CHECK(interference_at(0, a, h, scene, gated) == 0.0);
    CHECK(throughput(1, a, h, scene, gated) == 0.0);

    EvaluationConfig bad;
    bad.rrb_schedule = {1, 0};
    CHECK_THROWS((void)evaluate_all(a, h, scene, bad));
}

TEST_CASE("interference vanishes with one UAV or one BS") {
    RfConstants rf;
    const auto uavs = generate_corridor(CorridorSpec{}, 4);
    std::vector<BaseStationSite> bss{{1, {200, 200, 25}, 0}, {2, {-200, -200, 25}, 0}};
    aim_boresights(bss, {0, 0, 0});
    const AntennaConfig antenna;

    for (auto kind : {ChannelKind::FewRay, ChannelKind::Statistical}) {
        const std::vector<Position3D> one{uavs[1]};
        const GeometryGrid grid(one, bss);
        const auto h = generate_channel(grid, ChannelProviderSpec{kind, 100, 3.0, 8, {}}, rf);
        Scene scene{&grid, antenna, rf, 16};
        Assignment a(1, 2, 16);
        a.assign(0, 1, 3);
        a.phi_scan_chosen[0] = -0.4;
        CHECK(interference_at(0, a, h, scene) == 0.0);
        const auto& g = grid.at(0, 1);
        const double closed = rf.tx_power_w * h.power(0, 1) *
                              std::pow(10.0, total_gain({g.theta, g.phi}, -0.4, antenna) / 10.0) / rf.noise_power_w;
        CHECK(std::fabs(sinr(0, a, h, scene) - closed) <= 1e-12 * closed);
    }

    const std::vector<BaseStationSite> single{bss[0]};
    const GeometryGrid grid(uavs, single);
    const auto h = generate_channel(grid, ChannelProviderSpec{}, rf);
    Scene scene{&grid, antenna, rf, 16};
    Assignment a(4, 1, 16);
    for (int m = 0; m < 4; ++m) a.assign(m, 0, m);
    for (int m = 0; m < 4; ++m) CHECK(interference_at(m, a, h, scene) == 0.0);
}

TEST_CASE("validate fixtures") {
    Assignment ok(2, 2, 2);
    ok.assign(0, 0, 1);
    ok.assign(1, 1, 0);
    CHECK(validate(ok, 2, 2, 2).empty());

    auto missing = ok;
    missing.beta_at(1, 1) = 0;
    missing.x_at(1, 1, 0) = 0;
    auto v = validate(missing, 2, 2, 2);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].constraint == "C1");
    CHECK(v[0].detail.find("UAV 1") != std::string::npos);

    Assignment shared(2, 1, 2);
    shared.assign(0, 0, 1);
    shared.assign(1, 0, 1);
    v = validate(shared, 2, 1, 2);
    REQUIRE(v.size() == 1);
    CHECK(v[0].constraint == "C4");
    CHECK(v[0].detail.find("beam 1 of BS 0") != std::string::npos);

    Assignment crowded(3, 1, 2);
    crowded.assign(0, 0, 0);
    crowded.assign(1, 0, 1);
    crowded.assign(2, 0, 1);
    bool saw_c2 = false;
    for (const auto& e : validate(crowded, 3, 1, 2)) saw_c2 = saw_c2 || e.constraint == "C2";
    CHECK(saw_c2);

    Assignment stray(1, 2, 1);
    stray.assign(0, 0, 0);
    stray.x_at(0, 1, 0) = 1;
    bool saw_consistency = false;
    for (const auto& e : validate(stray, 1, 2, 1)) saw_consistency = saw_consistency || e.constraint == "consistency";
    CHECK(saw_consistency);

    Assignment two_beams(1, 1, 2);
    two_beams.assign(0, 0, 0);
    two_beams.assign(0, 0, 1);
    CHECK(validate(two_beams, 1, 1, 2).at(0).constraint == "C3");

    CHECK(validate(ok, 3, 2, 2).at(0).constraint == "shape");
}

TEST_CASE("rate properties on random scenes") {
    auto rng = make_rng(808, {});
    const auto uavs = generate_corridor(CorridorSpec{}, 3);
    std::vector<BaseStationSite> bss{{1, {200, 200, 25}, 0}, {2, {-200, -200, 25}, 0}};
    aim_boresights(bss, {0, 0, 0});
    const GeometryGrid grid(uavs, bss);
    Scene scene{&grid, AntennaConfig{}, RfConstants{}, 4};

    for (int t = 0; t < 200; ++t) {
        auto a = allocate_random(3, 2, 4, static_cast<std::uint64_t>(t));
        for (auto& p : a.phi_scan_chosen) p = -std::numbers::pi + 2 * std::numbers::pi * uniform01(rng);
        std::vector<double> p(6);
        for (auto& v : p) v = std::pow(10.0, -3 - 6 * uniform01(rng));
        const auto h = power_tensor(3, 2, p);

        const auto report = evaluate_all(a, h, scene);
        for (double r : report.per_uav_rate_bps) CHECK((std::isfinite(r) && r >= 0.0));

        const int m = static_cast<int>(uniform01(rng) * 3);
        auto boosted = h;
        boosted.power_gains[boosted.link_index(m, a.serving(m).bs)] *= 1.0 + 10 * uniform01(rng);
        CHECK(throughput(m, a, boosted, scene) >= throughput(m, a, h, scene));

        Scene louder = scene;
        louder.rf.tx_power_w *= 1.0 + 5 * uniform01(rng);
        CHECK(sinr(m, a, h, louder) >= sinr(m, a, h, scene));

        Scene quiet = scene;
        quiet.rf.noise_power_w = 0.0;
        Scene quiet_loud = louder;
        quiet_loud.rf.noise_power_w = 0.0;
        if (interference_at(m, a, h, quiet) > 0.0)
            CHECK(sinr(m, a, h, quiet_loud) == Approx(sinr(m, a, h, quiet)).epsilon(1e-12));
    }
}
