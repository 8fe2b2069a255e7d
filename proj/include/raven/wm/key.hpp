#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raven/core/rng.hpp"

namespace raven::wm {

enum class Scheme { dwt_dct, dwt_dct_svd, fourier_ring, external };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Scheme-tagged key. Bitstream schemes carry a payload of 32/48/64 bits;
// the semantic scheme carries a Fourier-ring pattern + mask tied to the
// backend's latent dims plus the seed that generated them.
struct WatermarkKey {
    Scheme scheme = Scheme::dwt_dct;
    std::vector<std::uint8_t> payload;  // one bit per entry
    double strength = 0.0;

    // fourier_ring
    std::uint64_t base_seed = 0;
    int latent_height = 0, latent_width = 0;
    int ring_inner = 0, ring_outer = 0;
    std::vector<std::complex<double>> ring_pattern;  // latent_h * latent_w, zero off-mask
    std::vector<std::uint8_t> ring_mask;

    // external adapter
    std::string external_exe;
    std::string external_key_json;

    void validate() const;

    std::string to_json() const;
    static WatermarkKey from_json(const std::string& json_text);
};

inline constexpr double kDefaultDctStrength = 0.08;    // QIM step on LL-band DCT coefficients
inline constexpr double kDefaultSvdStrength = 0.14;    // QIM step on leading singular values
inline constexpr double kDefaultRingAmplitude = 2.5;   // ring constant scale in the unitary spectrum

WatermarkKey make_bitstream_key(Scheme scheme, int payload_bits, core::RngStream& rng,
                                double strength = 0.0);

WatermarkKey make_fourier_ring_key(std::uint64_t base_seed, int latent_height, int latent_width,
                                   int ring_inner = 2, int ring_outer = 0,
                                   double amplitude = kDefaultRingAmplitude);

// Detector output: decision == detected iff statistic >= threshold.
struct DetectionOutcome {
    double statistic = 0.0;
    std::optional<std::vector<std::uint8_t>> decoded;
    bool detected = false;
    double threshold_used = 0.0;
};

DetectionOutcome make_outcome(double statistic, double threshold,
                              std::optional<std::vector<std::uint8_t>> decoded = std::nullopt);

}  // namespace raven::wm
