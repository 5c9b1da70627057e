// SPDX-License-Identifier: Apache-2.0
#include "corridor/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "corridor/error.hpp"
#include "corridor/random.hpp"

namespace corridor {

namespace {

// Generalized Metropolis acceptance parameter (qa); negative values make
// uphill moves increasingly unlikely as the temperature drops.
constexpr double kAcceptanceParam = -5.0;
constexpr double kMaxVisit = 1e8;

/// Draws a step from the Tsallis-Cauchy visiting distribution (1-D).
class VisitingDistribution {
public:
    explicit VisitingDistribution(double qv) : qv_(qv) {
        factor2_ = std::exp((4.0 - qv) * std::log(qv - 1.0));
        factor3_ = std::exp((2.0 - qv) * std::log(2.0) / (qv - 1.0));
        factor4p_ = std::sqrt(std::numbers::pi) * factor2_ / (factor3_ * (3.0 - qv));
        const double factor5 = 1.0 / (qv - 1.0) - 0.5;
        const double d1 = 2.0 - factor5;
        factor6_ = std::numbers::pi * (1.0 - factor5) / std::sin(std::numbers::pi * (1.0 - factor5)) /
                   std::exp(std::lgamma(d1));
    }

    double operator()(double temperature, Rng& rng) const {
        const double factor1 = std::exp(std::log(temperature) / (qv_ - 1.0));
        const double factor4 = factor4p_ * factor1;
        const double sigma = std::exp(-(qv_ - 1.0) * std::log(factor6_ / factor4) / (3.0 - qv_));
        const double x = sigma * standard_normal(rng);
        const double y = standard_normal(rng);
        const double den = std::exp((qv_ - 1.0) * std::log(std::fabs(y)) / (3.0 - qv_));
        double step = x / den;
        if (!std::isfinite(step) || std::fabs(step) > kMaxVisit)
            step = std::copysign(kMaxVisit, step) * uniform01(rng);
        return step;
    }

private:
    double qv_;
    double factor2_ = 0.0;
    double factor3_ = 0.0;
    double factor4p_ = 0.0;
    double factor6_ = 0.0;
};

}  // namespace

void AnnealerConfig::validate() const {
    if (t_global < 1) throw ConfigError("annealer.t_global must be >= 1");
    if (t_local < 0) throw ConfigError("annealer.t_local must be >= 0");
    if (!(initial_temperature > 0.0)) throw ConfigError("annealer.initial_temperature must be positive");
    if (!(visiting_param > 1.0 && visiting_param < 3.0)) throw ConfigError("annealer.visiting_param must be in (1, 3)");
    if (restart_stall < 1) throw ConfigError("annealer.restart_stall must be >= 1");
}

ScalarOptimum dual_annealing_maximize(const std::function<double(double)>& objective, double lo, double hi,
                                      const AnnealerConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::int64_t evals = 0;
    // Energy is the negated objective; the search minimizes it.
    auto energy = [&](double x) {
        ++evals;
        return -objective(x);
    };

    const double range = hi - lo;
    if (!(range > 0.0)) {
        const double e = energy(lo);
        return {lo, -e, evals};
    }

    Rng rng(seed);
    const VisitingDistribution visit(cfg.visiting_param);
    auto wrap = [&](double x) {
        const double b = std::fmod(x - lo, range) + range;
        return std::clamp(std::fmod(b, range) + lo, lo, hi);
    };

    auto local_search = [&](double x0, double& x_best, double& e_best) {
        if (cfg.t_local == 0) return;
        const double half = 0.25 * range;
        const double a = std::max(lo, x0 - half);
        const double b = std::min(hi, x0 + half);
        std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.t_local);
        const auto [x, e] = boost::math::tools::brent_find_minima(energy, a, b, 40, iters);
        if (e < e_best) {
            x_best = x;
            e_best = e;
        }
    };

    double x_cur = lo + range * uniform01(rng);
    double e_cur = energy(x_cur);
    double x_best = x_cur;
    double e_best = e_cur;
    local_search(x_cur, x_best, e_best);
    x_cur = x_best;
    e_cur = e_best;

    const double qv1 = cfg.visiting_param - 1.0;
    const double t1 = std::exp(qv1 * std::log(2.0)) - 1.0;
    int stall = 0;
    for (int i = 0; i < cfg.t_global; ++i) {
        const double s = static_cast<double>(i) + 2.0;
        const double temperature = cfg.initial_temperature * t1 / (std::exp(qv1 * std::log(s)) - 1.0);
        const double step_temperature = temperature / static_cast<double>(i + 1);

        const double x_new = wrap(x_cur + visit(temperature, rng));
        const double e_new = energy(x_new);
        bool accept = e_new < e_cur;
        if (!accept) {
            const double r = uniform01(rng);
            const double pqv_base = 1.0 - (1.0 - kAcceptanceParam) * (e_new - e_cur) / step_temperature;
            const double pqv = pqv_base <= 0.0 ? 0.0 : std::exp(std::log(pqv_base) / (1.0 - kAcceptanceParam));
            accept = r <= pqv;
        }
        if (accept) {
            x_cur = x_new;
            e_cur = e_new;
        }

        if (e_cur < e_best) {
            x_best = x_cur;
            e_best = e_cur;
            local_search(x_cur, x_best, e_best);
            x_cur = x_best;
            e_cur = e_best;
            stall = 0;
        } else if (++stall >= cfg.restart_stall) {
            x_cur = lo + range * uniform01(rng);
            e_cur = energy(x_cur);
            stall = 0;
            if (e_cur < e_best) {
                x_best = x_cur;
                e_best = e_cur;
            }
        }
    }
    return {x_best, -e_best, evals};
}

}  // namespace corridor
