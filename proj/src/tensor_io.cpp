// SPDX-License-Identifier: Apache-2.0
// CTNS channel tensor files.
//
// Binary layout, little-endian:
//   "CTNS" | u16 version | u32 m | u32 l | u32 n_elems | u8 has_coefficients
//   [m*l*n_elems x (f64 re, f64 im)] | m*l x f64 power gain
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "corridor/channel.hpp"
#include "corridor/error.hpp"

namespace corridor {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'T', 'N', 'S'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 4 + 4 + 1;

class Reader {
public:
    explicit Reader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    [[nodiscard]] std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    template <typename T>
    T read_uint() {
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
        pos_ += sizeof(T);
        return v;
    }

    double read_f64() { return std::bit_cast<double>(read_uint<std::uint64_t>()); }

private:
    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

template <typename T>
void write_uint(std::ostream& os, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_f64(std::ostream& os, double v) { write_uint(os, std::bit_cast<std::uint64_t>(v)); }

void check_finite(const LinkGainTensor& t, const std::string& path) {
    for (const auto& c : t.coefficients)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw LoadError(LoadError::Kind::NonFinite, path + ": non-finite channel coefficient");
    for (double p : t.power_gains)
        if (!std::isfinite(p) || p < 0.0)
            throw LoadError(LoadError::Kind::NonFinite, path + ": non-finite or negative power gain");
}

LinkGainTensor parse_binary(const std::vector<unsigned char>& bytes, const std::string& path) {
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
        throw LoadError(LoadError::Kind::MalformedHeader, path + ": missing CTNS header");
    Reader in(bytes);
    in.read_uint<std::uint32_t>();  // magic
    const auto version = in.read_uint<std::uint16_t>();
    if (version != kVersion)
        throw LoadError(LoadError::Kind::MalformedHeader, path + ": unsupported version " + std::to_string(version));
    const auto m = in.read_uint<std::uint32_t>();
    const auto l = in.read_uint<std::uint32_t>();
    const auto k = in.read_uint<std::uint32_t>();
    const auto has_coef = in.read_uint<std::uint8_t>();
    if (k == 0 || has_coef > 1)
        throw LoadError(LoadError::Kind::MalformedHeader, path + ": invalid n_elems or coefficient flag");

    const std::uint64_t links = std::uint64_t{m} * l;
    const std::uint64_t coefs = has_coef ? links * k : 0;
    const std::uint64_t expected = coefs * 16 + links * 8;
    if (in.remaining() != expected)
        throw LoadError(LoadError::Kind::DimensionMismatch,
                        path + ": header declares " + std::to_string(m) + "x" + std::to_string(l) + "x" +
                            std::to_string(k) + " but payload is " + std::to_string(in.remaining()) + " bytes, expected " +
                            std::to_string(expected));

    LinkGainTensor t;
    t.m = static_cast<int>(m);
    t.l = static_cast<int>(l);
    t.n_elems = static_cast<int>(k);
    t.coefficients.resize(coefs);
    for (auto& c : t.coefficients) {
        const double re = in.read_f64();
        const double im = in.read_f64();
        c = {re, im};
    }
    t.power_gains.resize(links);
    for (auto& p : t.power_gains) p = in.read_f64();
    return t;
}

LinkGainTensor parse_json(const std::vector<unsigned char>& bytes, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(LoadError::Kind::MalformedHeader, path + ": " + e.what());
    }
    LinkGainTensor t;
    try {
        if (j.contains("magic") && j.at("magic").get<std::string>() != "CTNS")
            throw LoadError(LoadError::Kind::MalformedHeader, path + ": wrong magic");
        if (j.value("version", kVersion) != kVersion)
            throw LoadError(LoadError::Kind::MalformedHeader, path + ": unsupported version");
        t.m = j.at("m").get<int>();
        t.l = j.at("l").get<int>();
        t.n_elems = j.at("n_elems").get<int>();
        const bool has_coef = j.at("has_coefficients").get<bool>();
        if (t.m < 0 || t.l < 0 || t.n_elems < 1)
            throw LoadError(LoadError::Kind::MalformedHeader, path + ": invalid dimensions");
        const auto links = static_cast<std::size_t>(t.m) * static_cast<std::size_t>(t.l);
        if (has_coef) {
            const auto& arr = j.at("coefficients");
            if (arr.size() != links * static_cast<std::size_t>(t.n_elems))
                throw LoadError(LoadError::Kind::DimensionMismatch,
                                path + ": expected " + std::to_string(links * t.n_elems) + " coefficients, found " +
                                    std::to_string(arr.size()));
            for (const auto& c : arr) {
                if (!c.is_array() || c.size() != 2)
                    throw LoadError(LoadError::Kind::MalformedHeader, path + ": coefficient must be [re, im]");
                t.coefficients.emplace_back(c[0].get<double>(), c[1].get<double>());
            }
        }
        if (j.contains("power_gains")) {
            t.power_gains = j.at("power_gains").get<std::vector<double>>();
            if (t.power_gains.size() != links)
                throw LoadError(LoadError::Kind::DimensionMismatch,
                                path + ": expected " + std::to_string(links) + " power gains, found " +
                                    std::to_string(t.power_gains.size()));
        } else if (!has_coef) {
            throw LoadError(LoadError::Kind::MalformedHeader, path + ": power_gains required without coefficients");
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(LoadError::Kind::MalformedHeader, path + ": " + e.what());
    }
    return t;
}

}  // namespace

LinkGainTensor import_tensor(const std::filesystem::path& path) {
    const std::string name = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(LoadError::Kind::MissingFile, name + ": cannot open channel tensor file");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t first = 0;
    while (first < bytes.size() && std::isspace(bytes[first])) ++first;
    auto t = (first < bytes.size() && bytes[first] == '{') ? parse_json(bytes, name) : parse_binary(bytes, name);

    check_finite(t, name);
    if (t.has_coefficients()) t.recompute_power_gains();
    return t;
}

void export_tensor(const LinkGainTensor& tensor, const std::filesystem::path& path) {
    tensor.check_shape();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw LoadError(LoadError::Kind::Io, path.string() + ": cannot open for writing");
    os.write(kMagic.data(), kMagic.size());
    write_uint<std::uint16_t>(os, kVersion);
    write_uint<std::uint32_t>(os, static_cast<std::uint32_t>(tensor.m));
    write_uint<std::uint32_t>(os, static_cast<std::uint32_t>(tensor.l));
    write_uint<std::uint32_t>(os, static_cast<std::uint32_t>(tensor.n_elems));
    write_uint<std::uint8_t>(os, tensor.has_coefficients() ? 1 : 0);
    for (const auto& c : tensor.coefficients) {
        write_f64(os, c.real());
        write_f64(os, c.imag());
    }
    for (double p : tensor.power_gains) write_f64(os, p);
    if (!os) throw LoadError(LoadError::Kind::Io, path.string() + ": write failed");
}

void export_tensor_json(const LinkGainTensor& tensor, const std::filesystem::path& path) {
    tensor.check_shape();
    nlohmann::json j;
    j["magic"] = "CTNS";
    j["version"] = kVersion;
    j["m"] = tensor.m;
    j["l"] = tensor.l;
    j["n_elems"] = tensor.n_elems;
    j["has_coefficients"] = tensor.has_coefficients();
    auto coefs = nlohmann::json::array();
    for (const auto& c : tensor.coefficients) coefs.push_back({c.real(), c.imag()});
    j["coefficients"] = std::move(coefs);
    j["power_gains"] = tensor.power_gains;
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw LoadError(LoadError::Kind::Io, path.string() + ": cannot open for writing");
    os << j.dump(2) << '\n';
}

}  // namespace corridor
