// SPDX-License-Identifier: Apache-2.0
#include "corridor/allocator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "corridor/error.hpp"
#include "corridor/lsap.hpp"
#include "corridor/parallel.hpp"
#include "corridor/random.hpp"

namespace corridor {

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string infeasibility_message(int m, int l, int n) {
    return "infeasible: " + std::to_string(m) + " UAVs exceed the " + std::to_string(l * n) +
           " available BS-beam pairs (L*N = " + std::to_string(l) + "*" + std::to_string(n) + ")";
}

Sector BeamCodebook::sector(int n) const {
    if (n < 0 || n >= n_beams) throw DimensionError("beam index " + std::to_string(n) + " out of range");
    const double width = 2.0 * kPi / n_beams;
    return {-kPi + width * n, n + 1 == n_beams ? kPi : -kPi + width * (n + 1)};
}

void BeamCodebook::validate() const {
    if (n_beams < 1) throw ConfigError("codebook.n_beams must be >= 1");
}

ScalarOptimum optimize_scan_angle(const SteeringDirection& dir, const Sector& sector, const AntennaConfig& cfg,
                                  const AnnealerConfig& ann, std::uint64_t seed) {
    if (!(sector.hi > sector.lo)) throw ConfigError("scan sector must be non-empty");
    auto objective = [&](double phi) { return total_gain(dir, phi, cfg); };
    auto best = dual_annealing_maximize(objective, sector.lo, sector.hi, ann, seed);
    if (!sector.contains(best.x)) {
        // Only the excluded lower edge can be hit; step just inside.
        best.x = std::nextafter(sector.lo, sector.hi);
        best.value = objective(best.x);
        ++best.evals;
    }
    return best;
}

BeamGainTable build_beam_gain_table(const GeometryGrid& geometry, const BeamCodebook& codebook,
                                    const AntennaConfig& cfg, const AnnealerConfig& ann, int threads) {
    codebook.validate();
    cfg.validate();
    ann.validate();
    AntennaConfig antenna = cfg;
    antenna.theta_tilt = codebook.tilt;

    BeamGainTable table;
    table.m = geometry.uav_count();
    table.l = geometry.bs_count();
    table.n = codebook.n_beams;
    table.entries.resize(static_cast<std::size_t>(table.m) * table.l * table.n);
    std::vector<std::int64_t> evals(table.entries.size(), 0);

    parallel_for(table.entries.size(), threads, [&](std::size_t i) {
        const int ni = static_cast<int>(i % table.n);
        const int li = static_cast<int>((i / table.n) % table.l);
        const int mi = static_cast<int>(i / (static_cast<std::size_t>(table.n) * table.l));
        const auto& g = geometry.at(mi, li);
        const std::uint64_t seed = derive_seed(ann.seed, {stream_tag("stage1"), static_cast<std::uint64_t>(mi),
                                                          static_cast<std::uint64_t>(li),
                                                          static_cast<std::uint64_t>(ni)});
        const auto opt = optimize_scan_angle({g.theta, g.phi}, codebook.sector(ni), antenna, ann, seed);
        table.entries[i] = {opt.x, opt.value};
        evals[i] = opt.evals;
    });
    table.stage1_evals = std::accumulate(evals.begin(), evals.end(), std::int64_t{0});
    return table;
}

BeamGainTable build_beam_gain_table(std::span<const Position3D> uavs, std::span<const BaseStationSite> bss,
                                    const BeamCodebook& codebook, const AntennaConfig& cfg,
                                    const AnnealerConfig& ann, int threads) {
    return build_beam_gain_table(GeometryGrid(uavs, bss), codebook, cfg, ann, threads);
}

UtilityTensor build_utility(const BeamGainTable& table, const LinkGainTensor& gains, const RfConstants& rf) {
    if (table.m != gains.m || table.l != gains.l)
        throw DimensionError("beam table is " + std::to_string(table.m) + "x" + std::to_string(table.l) +
                             " but link gains are " + std::to_string(gains.m) + "x" + std::to_string(gains.l));
    gains.check_shape();
    UtilityTensor u;
    u.m = table.m;
    u.l = table.l;
    u.n = table.n;
    u.values.resize(table.entries.size());
    for (int mi = 0; mi < u.m; ++mi)
        for (int li = 0; li < u.l; ++li) {
            const double link = rf.tx_power_w * gains.power(mi, li);
            for (int ni = 0; ni < u.n; ++ni) {
                const auto i = u.index(mi, li, ni);
                u.values[i] = link * std::pow(10.0, table.entries[i].gain_db / 10.0);
            }
        }
    return u;
}

Assignment::Assignment(int m_, int l_, int n_)
    : m(m_),
      l(l_),
      n(n_),
      beta(static_cast<std::size_t>(m_) * l_, 0),
      x(static_cast<std::size_t>(m_) * l_ * n_, 0),
      phi_scan_chosen(static_cast<std::size_t>(m_), 0.0) {}

void Assignment::assign(int mi, int li, int ni) {
    beta_at(mi, li) = 1;
    x_at(mi, li, ni) = 1;
}

Assignment::Link Assignment::serving(int mi) const {
    for (int li = 0; li < l; ++li) {
        if (!beta_at(mi, li)) continue;
        for (int ni = 0; ni < n; ++ni)
            if (x_at(mi, li, ni)) return {li, ni};
    }
    return {};
}

double Assignment::total_utility(const UtilityTensor& util) const {
    double total = 0.0;
    for (int mi = 0; mi < m; ++mi)
        for (int li = 0; li < l; ++li) {
            if (!beta_at(mi, li)) continue;
            for (int ni = 0; ni < n; ++ni)
                if (x_at(mi, li, ni)) total += util.at(mi, li, ni);
        }
    return total;
}

Assignment solve_assignment(const UtilityTensor& util) {
    const int cols = util.l * util.n;
    if (util.m > cols) throw InfeasibleError(infeasibility_message(util.m, util.l, util.n));
    if (util.values.size() != static_cast<std::size_t>(util.m) * cols)
        throw DimensionError("utility tensor size does not match m*l*n");

    // Normalizing keeps the padded sentinel rows on the same scale as the
    // (often ~1e-9 W) utilities; the argmax is scale invariant.
    double peak = 0.0;
    for (double v : util.values) {
        if (!std::isfinite(v) || v < 0.0) throw DimensionError("utility entries must be finite and non-negative");
        peak = std::max(peak, v);
    }
    const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
    std::vector<double> cost(util.values.size());
    std::transform(util.values.begin(), util.values.end(), cost.begin(), [&](double v) { return -v * scale; });

    const auto row_to_col = solve_min_cost_assignment(cost, util.m, cols);
    Assignment a(util.m, util.l, util.n);
    for (int mi = 0; mi < util.m; ++mi) {
        const int j = row_to_col[static_cast<std::size_t>(mi)];
        a.assign(mi, j / util.n, j % util.n);
    }
    return a;
}

void attach_scan_angles(Assignment& a, const BeamGainTable& table) {
    if (table.m != a.m || table.l != a.l || table.n != a.n) throw DimensionError("beam table does not match assignment");
    for (int mi = 0; mi < a.m; ++mi) {
        const auto s = a.serving(mi);
        if (s.bs >= 0) a.phi_scan_chosen[static_cast<std::size_t>(mi)] = table.at(mi, s.bs, s.beam).phi_star;
    }
}

void attach_nominal_scan_angles(Assignment& a, const BeamCodebook& codebook) {
    if (codebook.n_beams != a.n) throw DimensionError("codebook does not match assignment");
    for (int mi = 0; mi < a.m; ++mi) {
        const auto s = a.serving(mi);
        if (s.bs >= 0) a.phi_scan_chosen[static_cast<std::size_t>(mi)] = codebook.sector(s.beam).center();
    }
}

TwoStageResult allocate_two_stage(const BeamGainTable& table, const LinkGainTensor& gains, const RfConstants& rf) {
    const auto t0 = std::chrono::steady_clock::now();
    TwoStageResult r;
    r.table = table;
    r.utility = build_utility(table, gains, rf);
    r.assignment = solve_assignment(r.utility);
    attach_scan_angles(r.assignment, table);
    r.timings.stage2_s = seconds_since(t0);
    return r;
}

TwoStageResult allocate_two_stage(const GeometryGrid& geometry, const LinkGainTensor& gains,
                                  const BeamCodebook& codebook, const AntennaConfig& cfg, const RfConstants& rf,
                                  const AnnealerConfig& ann, int threads) {
    if (geometry.uav_count() > geometry.bs_count() * codebook.n_beams)
        throw InfeasibleError(infeasibility_message(geometry.uav_count(), geometry.bs_count(), codebook.n_beams));
    const auto t0 = std::chrono::steady_clock::now();
    auto table = build_beam_gain_table(geometry, codebook, cfg, ann, threads);
    const double stage1 = seconds_since(t0);
    auto r = allocate_two_stage(table, gains, rf);
    r.timings.stage1_s = stage1;
    return r;
}

Assignment allocate_random(int m, int l, int n, std::uint64_t seed) {
    const int cols = l * n;
    if (m > cols) throw InfeasibleError(infeasibility_message(m, l, n));
    std::vector<int> columns(static_cast<std::size_t>(cols));
    std::iota(columns.begin(), columns.end(), 0);
    auto rng = make_rng(seed, {stream_tag("random_allocator")});
    Assignment a(m, l, n);
    for (int i = 0; i < m; ++i) {
        const auto remaining = static_cast<std::size_t>(cols - i);
        auto pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(remaining));
        pick = std::min(pick, remaining - 1);
        std::swap(columns[static_cast<std::size_t>(i)], columns[static_cast<std::size_t>(i) + pick]);
        const int j = columns[static_cast<std::size_t>(i)];
        a.assign(i, j / n, j % n);
    }
    return a;
}

Assignment allocate_closest_bs(std::span<const Position3D> uavs, std::span<const BaseStationSite> bss,
                               const UtilityTensor& util) {
    const int m = static_cast<int>(uavs.size());
    const int l = static_cast<int>(bss.size());
    if (util.m != m || util.l != l) throw DimensionError("utility tensor does not match UAV/BS counts");
    const int n = util.n;
    if (m > l * n) throw InfeasibleError(infeasibility_message(m, l, n));

    std::vector<std::uint8_t> taken(static_cast<std::size_t>(l) * n, 0);
    std::vector<int> used(static_cast<std::size_t>(l), 0);
    Assignment a(m, l, n);
    std::vector<int> order(static_cast<std::size_t>(l));
    for (int mi = 0; mi < m; ++mi) {
        std::vector<double> dist(static_cast<std::size_t>(l));
        for (int li = 0; li < l; ++li) dist[static_cast<std::size_t>(li)] = distance(uavs[static_cast<std::size_t>(mi)], bss[static_cast<std::size_t>(li)].position);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a_, int b_) {
            return dist[static_cast<std::size_t>(a_)] < dist[static_cast<std::size_t>(b_)];
        });

        bool placed = false;
        for (int li : order) {
            if (used[static_cast<std::size_t>(li)] >= n) continue;
            int best = -1;
            for (int ni = 0; ni < n; ++ni) {
                if (taken[static_cast<std::size_t>(li) * n + ni]) continue;
                if (best < 0 || util.at(mi, li, ni) > util.at(mi, li, best)) best = ni;
            }
            taken[static_cast<std::size_t>(li) * n + best] = 1;
            ++used[static_cast<std::size_t>(li)];
            a.assign(mi, li, best);
            placed = true;
            break;
        }
        if (!placed) throw InfeasibleError("no free beam left for UAV " + std::to_string(mi));
    }
    return a;
}

}  // namespace corridor
