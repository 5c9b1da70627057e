// SPDX-License-Identifier: Apache-2.0
#include "corridor/evaluator.hpp"

#include <cmath>

#include "corridor/error.hpp"

namespace corridor {

namespace {

double linear(double db) { return std::pow(10.0, db / 10.0); }

const GeometryGrid& geometry_of(const Scene& scene) {
    if (scene.geometry == nullptr) throw ConfigError("scene has no geometry");
    return *scene.geometry;
}

double beam_gain_toward(const Scene& scene, int victim, int bs, double phi_scan) {
    const auto& g = geometry_of(scene).at(victim, bs);
    return total_gain({g.theta, g.phi}, phi_scan, scene.antenna);
}

}  // namespace

std::string_view to_string(InterfererIndexing v) noexcept {
    return v == InterfererIndexing::Interferer ? "interferer" : "victim";
}

std::string_view to_string(PowerSplit v) noexcept { return v == PowerSplit::PerBeam ? "per_beam" : "divided"; }

InterfererIndexing parse_interferer_indexing(std::string_view s) {
    if (s == "interferer") return InterfererIndexing::Interferer;
    if (s == "victim") return InterfererIndexing::Victim;
    throw ConfigError("unknown interferer indexing '" + std::string(s) + "'");
}

PowerSplit parse_power_split(std::string_view s) {
    if (s == "per_beam") return PowerSplit::PerBeam;
    if (s == "divided") return PowerSplit::DividedAmongBeams;
    throw ConfigError("unknown power split '" + std::string(s) + "'");
}

bool EvaluationConfig::scheduled(int m, int l, int r, int n_bs) const {
    if (rrb_schedule.empty()) return true;
    return rrb_schedule.at((static_cast<std::size_t>(m) * n_bs + l) * num_rrbs + r) != 0;
}

void EvaluationConfig::validate(int m, int l) const {
    if (num_rrbs < 1) throw ConfigError("evaluation.num_rrbs must be >= 1");
    if (!rrb_schedule.empty()) {
        if (rrb_schedule.size() != static_cast<std::size_t>(m) * l * num_rrbs)
            throw ConfigError("evaluation.rrb_schedule must have m*l*num_rrbs entries");
        for (auto v : rrb_schedule)
            if (v > 1) throw ConfigError("evaluation.rrb_schedule entries must be 0 or 1");
    }
}

double Scene::beam_power_w(PowerSplit split) const {
    return split == PowerSplit::PerBeam ? rf.tx_power_w : rf.tx_power_w / n_beams;
}

double interference_at(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                       const EvaluationConfig& eval, int rrb) {
    const auto own = a.serving(m);
    const double power = scene.beam_power_w(eval.power_split);
    double total = 0.0;
    for (int lp = 0; lp < a.l; ++lp) {
        if (lp == own.bs) continue;
        for (int mp = 0; mp < a.m; ++mp) {
            if (mp == m) continue;
            // Whose indicators gate the term: the interferer's (m') or, in the
            // literal reading, the victim's own.
            const int gate = eval.indexing == InterfererIndexing::Interferer ? mp : m;
            if (!a.beta_at(gate, lp) || !eval.scheduled(gate, lp, rrb, a.l)) continue;
            for (int n = 0; n < a.n; ++n) {
                if (!a.x_at(gate, lp, n)) continue;
                const double scan = a.phi_scan_chosen[static_cast<std::size_t>(gate)];
                total += power * gains.power(m, lp) * linear(beam_gain_toward(scene, m, lp, scan));
            }
        }
    }
    return total;
}

double sinr(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene, const EvaluationConfig& eval,
            int rrb) {
    const auto own = a.serving(m);
    if (own.bs < 0) return 0.0;
    const double signal = scene.beam_power_w(eval.power_split) * gains.power(m, own.bs) *
                          linear(beam_gain_toward(scene, m, own.bs, a.phi_scan_chosen[static_cast<std::size_t>(m)]));
    return signal / (interference_at(m, a, gains, scene, eval, rrb) + scene.rf.noise_power_w);
}

double throughput(int m, const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                  const EvaluationConfig& eval) {
    const auto own = a.serving(m);
    if (own.bs < 0) return 0.0;
    double rate = 0.0;
    for (int r = 0; r < eval.num_rrbs; ++r) {
        if (!eval.scheduled(m, own.bs, r, a.l)) continue;
        rate += std::log2(1.0 + sinr(m, a, gains, scene, eval, r));
    }
    return scene.rf.bandwidth_hz * rate;
}

ThroughputReport evaluate_all(const Assignment& a, const LinkGainTensor& gains, const Scene& scene,
                              const EvaluationConfig& eval) {
    if (gains.m != a.m || gains.l != a.l) throw DimensionError("link gains do not match the assignment");
    if (geometry_of(scene).uav_count() != a.m || geometry_of(scene).bs_count() != a.l)
        throw DimensionError("scene geometry does not match the assignment");
    eval.validate(a.m, a.l);

    ThroughputReport report;
    report.per_uav_sinr.resize(static_cast<std::size_t>(a.m));
    report.per_uav_rate_bps.resize(static_cast<std::size_t>(a.m));
    for (int m = 0; m < a.m; ++m) {
        const auto own = a.serving(m);
        int first = 0;
        while (own.bs >= 0 && first < eval.num_rrbs && !eval.scheduled(m, own.bs, first, a.l)) ++first;
        const auto mi = static_cast<std::size_t>(m);
        report.per_uav_sinr[mi] = (own.bs >= 0 && first < eval.num_rrbs) ? sinr(m, a, gains, scene, eval, first) : 0.0;
        report.per_uav_rate_bps[mi] = throughput(m, a, gains, scene, eval);
        report.total_rate_bps += report.per_uav_rate_bps[mi];
    }
    report.mean_rate_bps = a.m > 0 ? report.total_rate_bps / a.m : 0.0;
    return report;
}

std::vector<ConstraintViolation> validate(const Assignment& a, int m, int l, int n) {
    std::vector<ConstraintViolation> out;
    if (a.m != m || a.l != l || a.n != n || a.beta.size() != static_cast<std::size_t>(m) * l ||
        a.x.size() != static_cast<std::size_t>(m) * l * n) {
        out.push_back({"shape", "assignment dimensions do not match " + std::to_string(m) + "x" + std::to_string(l) +
                                    "x" + std::to_string(n)});
        return out;
    }
    for (int mi = 0; mi < m; ++mi) {
        int bs_count = 0;
        int beam_count = 0;
        for (int li = 0; li < l; ++li) {
            bs_count += a.beta_at(mi, li);
            for (int ni = 0; ni < n; ++ni) {
                if (!a.x_at(mi, li, ni)) continue;
                if (a.beta_at(mi, li)) ++beam_count;
                else
                    out.push_back({"consistency", "UAV " + std::to_string(mi) + " uses beam " + std::to_string(ni) +
                                                      " of BS " + std::to_string(li) + " without being associated"});
            }
        }
        if (bs_count != 1)
            out.push_back({"C1", "UAV " + std::to_string(mi) + " is associated with " + std::to_string(bs_count) +
                                     " BSs"});
        if (beam_count != 1)
            out.push_back({"C3", "UAV " + std::to_string(mi) + " holds " + std::to_string(beam_count) + " beams"});
    }
    for (int li = 0; li < l; ++li) {
        int load = 0;
        for (int mi = 0; mi < m; ++mi) load += a.beta_at(mi, li);
        if (load > n)
            out.push_back({"C2", "BS " + std::to_string(li) + " serves " + std::to_string(load) + " UAVs, limit " +
                                     std::to_string(n)});
        for (int ni = 0; ni < n; ++ni) {
            int users = 0;
            for (int mi = 0; mi < m; ++mi) users += a.x_at(mi, li, ni);
            if (users > 1)
                out.push_back({"C4", "beam " + std::to_string(ni) + " of BS " + std::to_string(li) + " is shared by " +
                                         std::to_string(users) + " UAVs"});
        }
    }
    return out;
}

}  // namespace corridor
