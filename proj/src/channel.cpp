// SPDX-License-Identifier: Apache-2.0
#include "corridor/channel.hpp"

#include <cmath>
#include <numbers>

#include "corridor/error.hpp"
#include "corridor/random.hpp"

namespace corridor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::complex<double> complex_normal(Rng& rng, double power) {
    const double s = std::sqrt(power / 2.0);
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    return {s * re, s * im};
}

LinkGainTensor empty_tensor(const GeometryGrid& g, std::uint64_t ray_count) {
    LinkGainTensor t;
    t.m = g.uav_count();
    t.l = g.bs_count();
    t.n_elems = 1;
    const auto n = static_cast<std::size_t>(t.m) * static_cast<std::size_t>(t.l);
    t.coefficients.resize(n);
    t.los.resize(n);
    t.scatter_power.resize(n);
    t.ray_count = ray_count;
    return t;
}

}  // namespace

void RfConstants::validate() const {
    if (!(carrier_hz > 0.0)) throw ConfigError("rf.carrier_hz must be positive");
    if (!(bandwidth_hz > 0.0)) throw ConfigError("rf.bandwidth_hz must be positive");
    if (!(tx_power_w > 0.0)) throw ConfigError("rf.tx_power_w must be positive");
    if (!(noise_power_w > 0.0)) throw ConfigError("rf.noise_power_w must be positive");
}

void LinkGainTensor::recompute_power_gains() {
    power_gains.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(l), 0.0);
    if (!has_coefficients()) return;
    for (int mi = 0; mi < m; ++mi)
        for (int li = 0; li < l; ++li) {
            double acc = 0.0;
            for (int k = 0; k < n_elems; ++k) acc += std::norm(coefficients[coef_index(mi, li, k)]);
            power_gains[link_index(mi, li)] = acc / n_elems;
        }
}

void LinkGainTensor::check_shape() const {
    const auto links = static_cast<std::size_t>(m) * static_cast<std::size_t>(l);
    const auto coefs = links * static_cast<std::size_t>(n_elems);
    if (m < 0 || l < 0 || n_elems < 1) throw DimensionError("tensor has invalid dimensions");
    if (power_gains.size() != links) throw DimensionError("tensor power_gains size does not match m*l");
    if (!coefficients.empty() && coefficients.size() != coefs)
        throw DimensionError("tensor coefficients size does not match m*l*n_elems");
    if (!los.empty() && los.size() != coefficients.size()) throw DimensionError("tensor los shape mismatch");
    if (!scatter_power.empty() && scatter_power.size() != coefficients.size())
        throw DimensionError("tensor scatter_power shape mismatch");
}

std::string_view to_string(ChannelKind k) noexcept {
    switch (k) {
        case ChannelKind::FewRay: return "few_ray";
        case ChannelKind::Statistical: return "statistical";
        case ChannelKind::Import: return "import";
    }
    return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
    if (name == "few_ray") return ChannelKind::FewRay;
    if (name == "statistical") return ChannelKind::Statistical;
    if (name == "import") return ChannelKind::Import;
    throw ConfigError("unknown channel kind '" + std::string(name) + "'");
}

void ChannelProviderSpec::validate() const {
    if (ray_count < 1) throw ConfigError("channel.ray_count must be >= 1");
    if (!std::isfinite(rician_k_db)) throw ConfigError("channel.rician_k_db must be finite");
    if (kind == ChannelKind::Import && import_path.empty())
        throw ConfigError("channel.import_path is required for the import provider");
}

double free_space_path_gain(double distance_m, double carrier_hz) {
    if (!(distance_m > 0.0)) throw GeometryError("path gain needs a positive distance");
    const double lambda = kSpeedOfLight / carrier_hz;
    const double r = lambda / (4.0 * std::numbers::pi * distance_m);
    return r * r;
}

double umi_path_loss_db(double distance_m, double carrier_hz) {
    if (!(distance_m > 0.0)) throw GeometryError("path loss needs a positive distance");
    return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(carrier_hz / 1e9);
}

LinkGainTensor generate_few_ray(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                const RfConstants& rf) {
    spec.validate();
    auto t = empty_tensor(geometry, spec.ray_count);
    const double lambda = rf.wavelength();
    const double k_lin = db_to_linear(spec.rician_k_db);
    const std::uint64_t scatterers = spec.ray_count - 1;
    const std::uint64_t traced = std::min(scatterers, kMaxTracedRays);

    for (int mi = 0; mi < t.m; ++mi)
        for (int li = 0; li < t.l; ++li) {
            const auto idx = t.link_index(mi, li);
            const double d = geometry.at(mi, li).distance_3d;
            const double los_power = free_space_path_gain(d, rf.carrier_hz);
            const double los_phase = std::fmod(kTwoPi * d / lambda, kTwoPi);
            const auto los = std::polar(std::sqrt(los_power), los_phase);

            std::complex<double> scattered{0.0, 0.0};
            const double scatter_power = traced > 0 ? los_power / k_lin : 0.0;
            if (traced > 0) {
                auto rng = make_rng(spec.seed, {stream_tag("few_ray"), static_cast<std::uint64_t>(mi),
                                                static_cast<std::uint64_t>(li)});
                double weight_sum = 0.0;
                for (std::uint64_t r = 0; r < traced; ++r) {
                    const double w = -std::log(1.0 - uniform01(rng));  // exponential ray power
                    const double psi = kTwoPi * uniform01(rng);
                    scattered += std::polar(std::sqrt(w), psi);
                    weight_sum += w;
                }
                if (weight_sum > 0.0) scattered *= std::sqrt(scatter_power / weight_sum);
            }
            t.los[idx] = los;
            t.scatter_power[idx] = scatter_power;
            t.coefficients[idx] = los + scattered;
        }
    t.recompute_power_gains();
    return t;
}

LinkGainTensor generate_statistical(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                    const RfConstants& rf) {
    spec.validate();
    auto t = empty_tensor(geometry, spec.ray_count);
    const double k_lin = db_to_linear(spec.rician_k_db);
    const double los_share = k_lin / (k_lin + 1.0);
    const double scatter_share = 1.0 / (k_lin + 1.0);

    for (int mi = 0; mi < t.m; ++mi)
        for (int li = 0; li < t.l; ++li) {
            const auto idx = t.link_index(mi, li);
            const double g = db_to_linear(-umi_path_loss_db(geometry.at(mi, li).distance_3d, rf.carrier_hz));
            auto rng = make_rng(spec.seed, {stream_tag("statistical"), static_cast<std::uint64_t>(mi),
                                            static_cast<std::uint64_t>(li)});
            const double psi = kTwoPi * uniform01(rng);
            const auto los = std::polar(std::sqrt(g * los_share), psi);
            const auto scattered = complex_normal(rng, g * scatter_share);
            t.los[idx] = los;
            t.scatter_power[idx] = g * scatter_share;
            t.coefficients[idx] = los + scattered;
        }
    t.recompute_power_gains();
    return t;
}

LinkGainTensor generate_channel(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                const RfConstants& rf) {
    switch (spec.kind) {
        case ChannelKind::FewRay: return generate_few_ray(geometry, spec, rf);
        case ChannelKind::Statistical: return generate_statistical(geometry, spec, rf);
        case ChannelKind::Import: {
            auto t = import_tensor(spec.import_path);
            if (t.m != geometry.uav_count() || t.l != geometry.bs_count())
                throw DimensionError("imported tensor is " + std::to_string(t.m) + "x" + std::to_string(t.l) +
                                     " but the scenario has " + std::to_string(geometry.uav_count()) + " UAVs and " +
                                     std::to_string(geometry.bs_count()) + " BSs");
            return t;
        }
    }
    throw ConfigError("unknown channel kind");
}

LinkGainTensor degrade(const LinkGainTensor& source, std::uint64_t target_ray_count, std::uint64_t seed) {
    source.check_shape();
    if (!source.has_coefficients() || source.los.empty() || source.scatter_power.empty() ||
        source.ray_count == 0 || target_ray_count >= source.ray_count)
        return source;

    const double target = static_cast<double>(std::max<std::uint64_t>(target_ray_count, 1));
    const double rho = std::sqrt(target / static_cast<double>(source.ray_count));
    const double fresh = std::sqrt(1.0 - rho * rho);

    LinkGainTensor out = source;
    out.ray_count = target_ray_count;
    for (int mi = 0; mi < source.m; ++mi)
        for (int li = 0; li < source.l; ++li) {
            auto rng = make_rng(seed, {stream_tag("degrade"), static_cast<std::uint64_t>(mi),
                                       static_cast<std::uint64_t>(li)});
            for (int k = 0; k < source.n_elems; ++k) {
                const auto i = source.coef_index(mi, li, k);
                const auto scattered = source.coefficients[i] - source.los[i];
                const auto regenerated = complex_normal(rng, source.scatter_power[i]);
                out.coefficients[i] = source.los[i] + rho * scattered + fresh * regenerated;
            }
        }
    out.recompute_power_gains();
    return out;
}

}  // namespace corridor
