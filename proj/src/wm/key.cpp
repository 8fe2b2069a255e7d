#include "raven/wm/key.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "raven/core/base64.hpp"

namespace raven::wm {

using nlohmann::json;

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::dwt_dct: return "dwt_dct";
        case Scheme::dwt_dct_svd: return "dwt_dct_svd";
        case Scheme::fourier_ring: return "fourier_ring";
        case Scheme::external: return "external";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "dwt_dct") return Scheme::dwt_dct;
    if (name == "dwt_dct_svd") return Scheme::dwt_dct_svd;
    if (name == "fourier_ring") return Scheme::fourier_ring;
    if (name == "external") return Scheme::external;
    throw std::invalid_argument("unknown watermark scheme: " + name);
}

void WatermarkKey::validate() const {
    if (scheme == Scheme::dwt_dct || scheme == Scheme::dwt_dct_svd) {
        const std::size_t n = payload.size();
        if (n != 32 && n != 48 && n != 64)
            throw std::invalid_argument("bitstream payload length must be 32, 48 or 64");
        for (auto b : payload)
            if (b > 1) throw std::invalid_argument("payload entries must be bits");
        if (!(strength > 0.0)) throw std::invalid_argument("embedding strength must be positive");
    } else if (scheme == Scheme::fourier_ring) {
        if (latent_height <= 0 || latent_width <= 0)
            throw std::invalid_argument("fourier_ring key: latent dims missing");
        if (ring_mask.size() != std::size_t(latent_height) * latent_width ||
            ring_pattern.size() != ring_mask.size())
            throw std::invalid_argument("fourier_ring key: grid size mismatch");
        bool any = false;
        for (auto m : ring_mask) any = any || m;
        if (!any) throw std::invalid_argument("fourier_ring key: empty ring mask");
    } else if (scheme == Scheme::external) {
        if (external_exe.empty())
            throw std::invalid_argument("external key: adapter executable missing");
    }
}

WatermarkKey make_bitstream_key(Scheme scheme, int payload_bits, core::RngStream& rng,
                                double strength) {
    if (scheme != Scheme::dwt_dct && scheme != Scheme::dwt_dct_svd)
        throw std::invalid_argument("make_bitstream_key: scheme is not bitstream");
    WatermarkKey k;
    k.scheme = scheme;
    k.strength = strength > 0.0 ? strength
                                : (scheme == Scheme::dwt_dct ? kDefaultDctStrength
                                                             : kDefaultSvdStrength);
    k.payload.resize(std::size_t(payload_bits));
    for (auto& b : k.payload) b = std::uint8_t(rng.uniform_index(2));
    k.validate();
    return k;
}

WatermarkKey make_fourier_ring_key(std::uint64_t base_seed, int latent_height, int latent_width,
                                   int ring_inner, int ring_outer, double amplitude) {
    WatermarkKey k;
    k.scheme = Scheme::fourier_ring;
    k.base_seed = base_seed;
    k.latent_height = latent_height;
    k.latent_width = latent_width;
    k.ring_inner = ring_inner;
    if (ring_outer <= 0) ring_outer = std::min(latent_height, latent_width) / 2 - 2;
    k.ring_outer = ring_outer;
    k.strength = amplitude;
    if (ring_inner < 1 || ring_outer < ring_inner)
        throw std::invalid_argument("fourier_ring key: bad ring radii");

    core::RngStream rng(base_seed, "fourier-ring:pattern");
    std::vector<double> ring_value(std::size_t(ring_outer + 1), 0.0);
    for (int r = ring_inner; r <= ring_outer; ++r) ring_value[std::size_t(r)] = amplitude * rng.gaussian();

    const std::size_t n = std::size_t(latent_height) * latent_width;
    k.ring_pattern.assign(n, {0.0, 0.0});
    k.ring_mask.assign(n, 0);
    for (int i = 0; i < latent_height; ++i) {
        const double fi = i <= latent_height / 2 ? double(i) : double(i - latent_height);
        for (int j = 0; j < latent_width; ++j) {
            const double fj = j <= latent_width / 2 ? double(j) : double(j - latent_width);
            const int r = int(std::lround(std::hypot(fi, fj)));
            if (r >= ring_inner && r <= ring_outer) {
                const std::size_t idx = std::size_t(i) * latent_width + j;
                k.ring_mask[idx] = 1;
                // per-ring real constants keep the spectrum Hermitian
                k.ring_pattern[idx] = {ring_value[std::size_t(r)], 0.0};
            }
        }
    }
    k.validate();
    return k;
}

std::string WatermarkKey::to_json() const {
    json j;
    j["scheme"] = scheme_name(scheme);
    j["strength"] = strength;
    if (scheme == Scheme::dwt_dct || scheme == Scheme::dwt_dct_svd) {
        j["bits"] = payload.size();
        j["payload_b64"] = core::base64_encode(payload.data(), payload.size());
    } else if (scheme == Scheme::fourier_ring) {
        j["base_seed"] = base_seed;
        j["latent_height"] = latent_height;
        j["latent_width"] = latent_width;
        j["ring_inner"] = ring_inner;
        j["ring_outer"] = ring_outer;
        std::vector<double> re(ring_pattern.size()), im(ring_pattern.size());
        for (std::size_t i = 0; i < ring_pattern.size(); ++i) {
            re[i] = ring_pattern[i].real();
            im[i] = ring_pattern[i].imag();
        }
        j["pattern_re_b64"] = core::base64_encode(re.data(), re.size() * sizeof(double));
        j["pattern_im_b64"] = core::base64_encode(im.data(), im.size() * sizeof(double));
        j["mask_b64"] = core::base64_encode(ring_mask.data(), ring_mask.size());
    } else {
        j["external_exe"] = external_exe;
        j["external_key"] = external_key_json;
    }
    return j.dump(2);
}

WatermarkKey WatermarkKey::from_json(const std::string& text) {
    const json j = json::parse(text);
    WatermarkKey k;
    k.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    k.strength = j.at("strength").get<double>();
    if (k.scheme == Scheme::dwt_dct || k.scheme == Scheme::dwt_dct_svd) {
        k.payload = core::base64_decode(j.at("payload_b64").get<std::string>());
        if (k.payload.size() != j.at("bits").get<std::size_t>())
            throw std::invalid_argument("key json: payload size mismatch");
    } else if (k.scheme == Scheme::fourier_ring) {
        k.base_seed = j.at("base_seed").get<std::uint64_t>();
        k.latent_height = j.at("latent_height").get<int>();
        k.latent_width = j.at("latent_width").get<int>();
        k.ring_inner = j.at("ring_inner").get<int>();
        k.ring_outer = j.at("ring_outer").get<int>();
        const auto re_bytes = core::base64_decode(j.at("pattern_re_b64").get<std::string>());
        const auto im_bytes = core::base64_decode(j.at("pattern_im_b64").get<std::string>());
        const auto mask = core::base64_decode(j.at("mask_b64").get<std::string>());
        const std::size_t n = mask.size();
        if (re_bytes.size() != n * sizeof(double) || im_bytes.size() != n * sizeof(double))
            throw std::invalid_argument("key json: pattern size mismatch");
        k.ring_mask = mask;
        k.ring_pattern.resize(n);
        const double* re = reinterpret_cast<const double*>(re_bytes.data());
        const double* im = reinterpret_cast<const double*>(im_bytes.data());
        for (std::size_t i = 0; i < n; ++i) k.ring_pattern[i] = {re[i], im[i]};
    } else {
        k.external_exe = j.at("external_exe").get<std::string>();
        k.external_key_json = j.at("external_key").get<std::string>();
    }
    k.validate();
    return k;
}

DetectionOutcome make_outcome(double statistic, double threshold,
                              std::optional<std::vector<std::uint8_t>> decoded) {
    DetectionOutcome o;
    o.statistic = statistic;
    o.threshold_used = threshold;
    o.detected = statistic >= threshold;
    o.decoded = std::move(decoded);
    return o;
}

}  // namespace raven::wm
