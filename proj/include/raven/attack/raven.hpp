#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "raven/attack/view.hpp"
#include "raven/backend/backend.hpp"
#include "raven/backend/ddim.hpp"

namespace raven::attack {

using backend::BackendHandles;
using core::ImageBuffer;

// Attack configuration; defaults are the reference operating point
// (strength 0.15, 50 steps, guidance 2.5, empty prompt, diagonal pixel
// translations with magnitude in [24,32] and shared sign).
struct RavenConfig {
    double strength = 0.15;
    int steps = 50;
    double guidance = 2.5;
    double translation_min_px = 24.0;
    double translation_max_px = 32.0;
    bool independent_signs = false;
    std::string noising_mode = "stochastic";  // or "ddim-inversion"
    Boundary boundary = Boundary::edge_replicate;
    bool color_transfer = true;
    bool contrast_transfer = true;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AttackTrace {
    int tau = 0;
    std::pair<double, double> delta_px{0.0, 0.0};
    std::pair<double, double> delta_latent{0.0, 0.0};
    std::string boundary;
    std::string noising_mode;
    std::uint64_t seed = 0;
    std::string backend_fingerprint;
    std::string kernels;
    bool flat_luminance_warning = false;
    double color_clipped_fraction = 0.0;
    double contrast_clipped_fraction = 0.0;
    std::map<std::string, std::string> stage_hashes;

    std::string to_json() const;
    void save(const std::string& path) const;
};

// The full view-synthesis attack: partial inversion, latent viewpoint
// modulation, dual-path denoising with cross-view K/V routing, decode, and
// CIELAB color/contrast correction against the input.
std::pair<ImageBuffer, AttackTrace> run_raven(const ImageBuffer& x_w, const RavenConfig& cfg,
                                              const BackendHandles& backend);

}  // namespace raven::attack
