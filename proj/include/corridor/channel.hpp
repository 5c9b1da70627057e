// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "corridor/geometry.hpp"

namespace corridor {

inline constexpr double kSpeedOfLight = 299792458.0;

struct RfConstants {
    double carrier_hz = 3.5e9;
    double bandwidth_hz = 30e6;
    double tx_power_w = 10.0;
    double noise_power_w = 0.3;

    [[nodiscard]] double wavelength() const noexcept { return kSpeedOfLight / carrier_hz; }
    void validate() const;
};

/// Link gains between every UAV (m) and BS (l), optionally with per-element
/// complex coefficients (m, l, k).
///
/// power_gains(m, l) is the mean of |h(m, l, k)|^2 over k whenever
/// coefficients are present. The provenance fields (los, scatter_power,
/// ray_count) are filled by the synthetic providers and let `degrade`
/// separate the deterministic part from the scattered part; they are not
/// part of the file format.
struct LinkGainTensor {
    int m = 0;
    int l = 0;
    int n_elems = 1;
    std::vector<std::complex<double>> coefficients;  // empty or m*l*n_elems
    std::vector<double> power_gains;                 // m*l, linear

    std::vector<std::complex<double>> los;  // empty or same shape as coefficients
    std::vector<double> scatter_power;      // empty or same shape as coefficients
    std::uint64_t ray_count = 0;            // 0 when unknown (imported data)

    [[nodiscard]] bool has_coefficients() const noexcept { return !coefficients.empty(); }
    [[nodiscard]] std::size_t link_index(int mi, int li) const noexcept {
        return static_cast<std::size_t>(mi) * static_cast<std::size_t>(l) + static_cast<std::size_t>(li);
    }
    [[nodiscard]] std::size_t coef_index(int mi, int li, int k) const noexcept {
        return link_index(mi, li) * static_cast<std::size_t>(n_elems) + static_cast<std::size_t>(k);
    }
    [[nodiscard]] double power(int mi, int li) const { return power_gains.at(link_index(mi, li)); }
    [[nodiscard]] std::complex<double> coefficient(int mi, int li, int k) const {
        return coefficients.at(coef_index(mi, li, k));
    }

    /// Applies the aggregation rule (mean element power) to every link.
    void recompute_power_gains();
    /// Throws DimensionError if any buffer disagrees with (m, l, n_elems).
    void check_shape() const;
};

enum class ChannelKind { FewRay, Statistical, Import };

[[nodiscard]] std::string_view to_string(ChannelKind k) noexcept;
/// Throws ConfigError for unknown names ("few_ray", "statistical", "import").
[[nodiscard]] ChannelKind parse_channel_kind(std::string_view name);

struct ChannelProviderSpec {
    ChannelKind kind = ChannelKind::Statistical;
    std::uint64_t ray_count = 1'000'000;
    double rician_k_db = 3.0;
    std::uint64_t seed = 1;
    std::string import_path;

    void validate() const;
};

/// Scattered rays beyond this count are not traced individually: the
/// scattered sum is built from this many random phasors carrying the same
/// total power. At this size the sum is already indistinguishable from its
/// complex-Gaussian limit.
inline constexpr std::uint64_t kMaxTracedRays = 1u << 16;

/// Friis distance term (lambda / (4 pi d))^2. Throws GeometryError if d <= 0.
[[nodiscard]] double free_space_path_gain(double distance_m, double carrier_hz);

/// UMi street-canyon LOS path loss in dB: 32.4 + 21 log10(d) + 20 log10(f_GHz).
[[nodiscard]] double umi_path_loss_db(double distance_m, double carrier_hz);

/// Deterministic LOS ray plus (ray_count - 1) seeded scatterers whose total
/// power is the LOS power divided by the linear Rician K factor.
[[nodiscard]] LinkGainTensor generate_few_ray(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                              const RfConstants& rf);

/// UMi path loss times a unit-mean Rician small-scale factor.
[[nodiscard]] LinkGainTensor generate_statistical(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                                  const RfConstants& rf);

/// Dispatches on spec.kind. Imported tensors must match the geometry's (m, l).
[[nodiscard]] LinkGainTensor generate_channel(const GeometryGrid& geometry, const ChannelProviderSpec& spec,
                                              const RfConstants& rf);

/// Lower-fidelity view of `source`: the deterministic (LOS) part is kept and
/// the scattered part is re-estimated from `target_ray_count` of the source's
/// rays. The result correlates with the source scattered field by
/// sqrt(target/source) and has the same expected power. Tensors without
/// provenance, or a target at least as fine as the source, come back unchanged.
[[nodiscard]] LinkGainTensor degrade(const LinkGainTensor& source, std::uint64_t target_ray_count,
                                     std::uint64_t seed);

/// Reads a binary CTNS file, or its JSON mirror when the file starts with '{'.
[[nodiscard]] LinkGainTensor import_tensor(const std::filesystem::path& path);

/// Writes the binary CTNS format (little-endian).
void export_tensor(const LinkGainTensor& tensor, const std::filesystem::path& path);

/// Writes the JSON mirror format.
void export_tensor_json(const LinkGainTensor& tensor, const std::filesystem::path& path);

}  // namespace corridor
