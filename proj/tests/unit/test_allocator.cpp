// SPDX-License-Identifier: Apache-2.0
#include <array>
#include <cmath>
#include <numbers>

#include "corridor/allocator.hpp"
#include "corridor/error.hpp"
#include "corridor/evaluator.hpp"
#include "corridor/random.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace corridor;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double sector_grid_max(const SteeringDirection& dir, const Sector& s, const AntennaConfig& cfg, int points = 10000) {
    return oracle::grid_max([&](double p) { return total_gain(dir, p, cfg); }, s.lo, s.hi, points);
}

BeamGainTable flat_table(int m, int l, int n, double gain_db) {
    BeamGainTable t;
    t.m = m;
    t.l = l;
    t.n = n;
    t.entries.assign(static_cast<std::size_t>(m) * l * n, BeamGain{0.0, gain_db});
    return t;
}

LinkGainTensor power_tensor(int m, int l, std::vector<double> p) {
    LinkGainTensor t;
    t.m = m;
    t.l = l;
    t.power_gains = std::move(p);
    return t;
}

}  // namespace

TEST_CASE("codebook sectors tile (-pi, pi]") {
    BeamCodebook cb;
    CHECK(cb.sector(0).lo == -kPi);
    CHECK(cb.sector(15).hi == kPi);
    for (int n = 0; n + 1 < cb.n_beams; ++n) CHECK(cb.sector(n).hi == cb.sector(n + 1).lo);
    for (int n = 0; n < cb.n_beams; ++n) CHECK(cb.sector(n).width() == Approx(2 * kPi / 16).epsilon(1e-12));
    CHECK(cb.sector(15).contains(kPi));
    CHECK_FALSE(cb.sector(0).contains(-kPi));
    CHECK_THROWS_AS((void)cb.sector(16), DimensionError);
}

TEST_CASE("annealer finds the maximum of simple functions") {
    AnnealerConfig ann;
    const auto r = dual_annealing_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 1.0, ann, 4);
    CHECK(r.x == Approx(0.3).epsilon(1e-6));
    CHECK(r.evals > 0);
    const auto multi = dual_annealing_maximize([](double x) { return std::cos(5 * x) - 0.1 * x * x; }, -4, 4, ann, 8);
    CHECK(multi.value == Approx(1.0).epsilon(1e-6));
    const auto a = dual_annealing_maximize([](double x) { return std::sin(3 * x) * x; }, -2, 2, ann, 11);
    const auto b = dual_annealing_maximize([](double x) { return std::sin(3 * x) * x; }, -2, 2, ann, 11);
    CHECK(a.x == b.x);
    CHECK(a.evals == b.evals);
}

TEST_CASE("scan optimization over the full azimuth range") {
    const AntennaConfig cfg;
    const AnnealerConfig ann;
    const SteeringDirection dir{kPi / 2, 0.0};
    const Sector full{-kPi, kPi};
    const auto r = optimize_scan_angle(dir, full, cfg, ann);
    CHECK(std::fabs(r.value - sector_grid_max(dir, full, cfg)) <= 0.1);
    CHECK(full.contains(r.x));
}

TEST_CASE("single element array has a flat objective") {
    AntennaConfig cfg;
    cfg.n_h = 1;
    cfg.n_v = 1;
    const SteeringDirection dir{1.2, 0.4};
    const auto r = optimize_scan_angle(dir, BeamCodebook{}.sector(5), cfg, AnnealerConfig{});
    CHECK(BeamCodebook{}.sector(5).contains(r.x));
    CHECK(r.value == Approx(element_gain(dir.theta, dir.phi, cfg)).epsilon(1e-12));
}

TEST_CASE("degenerate sector") {
    const AntennaConfig cfg;
    const Sector tiny{0.2, 0.2 + 1e-6};
    const SteeringDirection dir{1.3, 0.1};
    const auto r = optimize_scan_angle(dir, tiny, cfg, AnnealerConfig{});
    CHECK(tiny.contains(r.x));
    CHECK(std::fabs(r.x - tiny.center()) <= 1e-6);
    CHECK(r.value == total_gain(dir, r.x, cfg));
}

TEST_CASE("stage-1 accuracy on random triplets") {
    const AntennaConfig cfg;
    const BeamCodebook cb;
    auto rng = make_rng(2024, {});
    int good = 0;
    for (int t = 0; t < 100; ++t) {
        const SteeringDirection dir{0.05 + uniform01(rng) * (kPi - 0.1), -kPi + 2 * kPi * uniform01(rng)};
        const int n = static_cast<int>(uniform01(rng) * cb.n_beams);
        AnnealerConfig ann;
        ann.seed = static_cast<std::uint64_t>(t);
        const auto r = optimize_scan_angle(dir, cb.sector(n), cfg, ann);
        CHECK(cb.sector(n).contains(r.x));
        if (std::fabs(r.value - sector_grid_max(dir, cb.sector(n), cfg)) <= 0.1) ++good;
    }
    CHECK(good >= 95);
}

TEST_CASE("beam gain table") {
    const AntennaConfig cfg;
    const AnnealerConfig ann;
    BeamCodebook cb;

    SUBCASE("one triplet") {
        cb.n_beams = 1;
        const std::array<Position3D, 1> uav{Position3D{100, 0, 100}};
        const std::array<BaseStationSite, 1> bs{BaseStationSite{1, {0, 0, 25}, 0.0}};
        const auto t = build_beam_gain_table(uav, bs, cb, cfg, ann);
        CHECK(t.entries.size() == 1);
        CHECK(t.stage1_evals > 0);
    }
    SUBCASE("best beam reaches the unsectored optimum") {
        const std::array<Position3D, 1> uav{Position3D{120, 60, 100}};
        const std::array<BaseStationSite, 1> bs{BaseStationSite{1, {0, 0, 25}, 0.3}};
        const auto t = build_beam_gain_table(uav, bs, cb, cfg, ann);
        const auto g = link_geometry(bs[0], uav[0]);
        AntennaConfig tilted = cfg;
        tilted.theta_tilt = cb.tilt;
        double best = -1e300;
        for (int n = 0; n < cb.n_beams; ++n) {
            const auto& e = t.at(0, 0, n);
            CHECK(cb.sector(n).contains(e.phi_star));
            CHECK(e.gain_db <= max_total_gain(cfg) + 1e-9);
            best = std::max(best, e.gain_db);
        }
        CHECK(std::fabs(best - sector_grid_max({g.theta, g.phi}, {-kPi, kPi}, tilted, 100000)) <= 0.1);
    }
    SUBCASE("mirror-image UAVs have mirror-image profiles") {
        const std::array<Position3D, 2> uavs{Position3D{150, 80, 100}, Position3D{150, -80, 100}};
        const std::array<BaseStationSite, 1> bs{BaseStationSite{1, {0, 0, 25}, 0.0}};
        const auto t = build_beam_gain_table(uavs, bs, cb, cfg, ann);
        for (int n = 0; n < cb.n_beams; ++n)
            CHECK(std::fabs(t.at(0, 0, n).gain_db - t.at(1, 0, cb.n_beams - 1 - n).gain_db) <= 0.05);
    }
    SUBCASE("thread count does not change the table") {
        const auto uavs = generate_corridor(CorridorSpec{}, 3);
        auto bss = std::vector<BaseStationSite>{{1, {200, 200, 25}, 0}, {2, {-200, -200, 25}, 0}};
        aim_boresights(bss, {0, 0, 0});
        const auto a = build_beam_gain_table(uavs, bss, cb, cfg, ann, 1);
        const auto b = build_beam_gain_table(uavs, bss, cb, cfg, ann, 4);
        CHECK(a.stage1_evals == b.stage1_evals);
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            CHECK(a.entries[i].phi_star == b.entries[i].phi_star);
            CHECK(a.entries[i].gain_db == b.entries[i].gain_db);
        }
    }
}

TEST_CASE("utility tensor") {
    RfConstants rf;
    rf.tx_power_w = 1.0;
    CHECK(build_utility(flat_table(1, 1, 1, 0.0), power_tensor(1, 1, {1.0}), rf).values[0] == 1.0);

    rf.tx_power_w = 10.0;
    const auto u = build_utility(flat_table(1, 1, 1, 4.041), power_tensor(1, 1, {4.645e-9}), rf);
    CHECK(u.values[0] == Approx(1.179e-7).epsilon(1e-3));

    auto table = flat_table(2, 2, 3, 1.5);
    table.entries[4].gain_db = -7.0;
    const auto gains = power_tensor(2, 2, {1e-9, 2e-9, 3e-9, 4e-9});
    const auto base = build_utility(table, gains, rf);
    for (auto& e : table.entries) e.gain_db += 10.0;
    const auto up = build_utility(table, gains, rf);
    for (std::size_t i = 0; i < base.values.size(); ++i) CHECK(up.values[i] == Approx(10 * base.values[i]).epsilon(1e-14));

    CHECK_THROWS_AS((void)build_utility(flat_table(2, 1, 1, 0.0), power_tensor(1, 1, {1.0}), rf), DimensionError);
}

TEST_CASE("two-stage composition") {
    RfConstants rf;
    SUBCASE("single triplet") {
        const auto r = allocate_two_stage(flat_table(1, 1, 1, 3.0), power_tensor(1, 1, {1e-8}), rf);
        CHECK(r.assignment.beta == std::vector<std::uint8_t>{1});
        CHECK(r.assignment.x == std::vector<std::uint8_t>{1});
    }
    SUBCASE("clear per-beam winners") {
        auto table = flat_table(2, 1, 2, 0.0);
        table.entries[0].gain_db = 3.0;   // UAV 0 beam 0
        table.entries[3].gain_db = 5.0;   // UAV 1 beam 1
        const auto r = allocate_two_stage(table, power_tensor(2, 1, {1e-8, 1e-8}), rf);
        CHECK(r.assignment.serving(0).beam == 0);
        CHECK(r.assignment.serving(1).beam == 1);
        CHECK(r.assignment.total_utility(r.utility) ==
              Approx(oracle::brute_force_max_assignment(r.utility.values, 2, 2)).epsilon(1e-12));
    }
    SUBCASE("full pipeline records both stage timings") {
        const auto uavs = generate_corridor(CorridorSpec{}, 2);
        std::vector<BaseStationSite> bss{{1, {200, 200, 25}, 0}, {2, {-200, 200, 25}, 0}};
        aim_boresights(bss, {0, 0, 0});
        const GeometryGrid grid(uavs, bss);
        const auto gains = generate_channel(grid, ChannelProviderSpec{}, rf);
        BeamCodebook cb;
        cb.n_beams = 4;
        const auto r = allocate_two_stage(grid, gains, cb, AntennaConfig{}, rf, AnnealerConfig{});
        CHECK(r.timings.stage1_s > 0.0);
        CHECK(r.timings.stage2_s > 0.0);
        CHECK(validate(r.assignment, 2, 2, 4).empty());
        for (int m = 0; m < 2; ++m) {
            const auto s = r.assignment.serving(m);
            CHECK(r.assignment.phi_scan_chosen[static_cast<std::size_t>(m)] == r.table.at(m, s.bs, s.beam).phi_star);
        }
    }
}

TEST_CASE("random allocator") {
    SUBCASE("perfect matching when M = L*N") {
        const auto a = allocate_random(6, 2, 3, 5);
        CHECK(validate(a, 6, 2, 3).empty());
        std::vector<int> used(6, 0);
        for (int m = 0; m < 6; ++m) ++used[static_cast<std::size_t>(a.serving(m).bs * 3 + a.serving(m).beam)];
        CHECK(used == std::vector<int>(6, 1));
    }
    SUBCASE("deterministic per seed") {
        CHECK(allocate_random(4, 3, 2, 77).x == allocate_random(4, 3, 2, 77).x);
    }
    SUBCASE("columns are uniform") {
        std::array<int, 4> hits{};
        const int draws = 10000;
        for (int s = 0; s < draws; ++s) {
            const auto a = allocate_random(1, 2, 2, static_cast<std::uint64_t>(s));
            ++hits[static_cast<std::size_t>(a.serving(0).bs * 2 + a.serving(0).beam)];
        }
        for (int h : hits) CHECK(std::fabs(h / static_cast<double>(draws) - 0.25) <= 0.02);
    }
    SUBCASE("infeasible") {
        CHECK_THROWS_AS((void)allocate_random(5, 2, 2, 1), InfeasibleError);
    }
}

TEST_CASE("closest-BS allocator") {
    const std::vector<BaseStationSite> bss{{1, {100, 0, 0}, 0}, {2, {-500, 0, 0}, 0}};
    SUBCASE("nearest BS regardless of utility") {
        const std::vector<Position3D> uav{{0, 0, 0}};
        const UtilityTensor u{1, 2, 1, {1.0, 100.0}};
        CHECK(allocate_closest_bs(uav, bss, u).serving(0).bs == 0);
    }
    SUBCASE("shared nearest BS, distinct best beams") {
        const std::vector<Position3D> uavs{{0, 0, 0}, {10, 0, 0}};
        const UtilityTensor u{2, 2, 2, {5, 9, 0, 0, 3, 8, 0, 0}};
        const auto a = allocate_closest_bs(uavs, bss, u);
        CHECK(a.serving(0).bs == 0);
        CHECK(a.serving(0).beam == 1);
        CHECK(a.serving(1).bs == 0);
        CHECK(a.serving(1).beam == 0);
    }
    SUBCASE("equidistant BSs favor the lower index") {
        const std::vector<BaseStationSite> sym{{1, {-50, 0, 0}, 0}, {2, {50, 0, 0}, 0}};
        const std::vector<Position3D> uav{{0, 0, 0}};
        const UtilityTensor u{1, 2, 1, {1.0, 2.0}};
        CHECK(allocate_closest_bs(uav, sym, u).serving(0).bs == 0);
    }
    SUBCASE("overflow to the next-nearest BS") {
        const std::vector<Position3D> uavs{{0, 0, 0}, {1, 0, 0}};
        const auto a = allocate_closest_bs(uavs, bss, UtilityTensor{2, 2, 1, std::vector<double>(4, 1.0)});
        CHECK(a.serving(0).bs == 0);
        CHECK(a.serving(1).bs == 1);
    }
    SUBCASE("no free beam anywhere") {
        const std::vector<Position3D> uavs{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
        CHECK_THROWS_AS((void)allocate_closest_bs(uavs, bss, UtilityTensor{3, 2, 1, std::vector<double>(6, 1.0)}),
                        InfeasibleError);
    }
}

TEST_CASE("every allocator produces feasible assignments") {
    auto rng = make_rng(404, {});
    for (int s = 0; s < 500; ++s) {
        const int l = 1 + static_cast<int>(uniform01(rng) * 4);
        const int n = 1 + static_cast<int>(uniform01(rng) * 4);
        const int m = 1 + static_cast<int>(uniform01(rng) * l * n);
        std::vector<Position3D> uavs;
        std::vector<BaseStationSite> bss;
        for (int i = 0; i < m; ++i) uavs.push_back({uniform01(rng) * 400 - 200, uniform01(rng) * 400 - 200, 100});
        for (int i = 0; i < l; ++i) bss.push_back({i + 1, {uniform01(rng) * 400 - 200, uniform01(rng) * 400 - 200, 25}, 0});
        UtilityTensor u{m, l, n, {}};
        for (int i = 0; i < m * l * n; ++i) u.values.push_back(uniform01(rng) * 1e-7);
        CHECK(validate(solve_assignment(u), m, l, n).empty());
        CHECK(validate(allocate_random(m, l, n, static_cast<std::uint64_t>(s)), m, l, n).empty());
        CHECK(validate(allocate_closest_bs(uavs, bss, u), m, l, n).empty());
    }
}
