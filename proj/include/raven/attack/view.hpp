#pragma once

#include <utility>

#include "raven/core/rng.hpp"
#include "raven/core/tensor.hpp"

namespace raven::attack {

enum class Boundary { edge_replicate, reflect, wrap };

// Global camera translation applied in latent space. delta components follow
// the sampling convention output[i,j] = input[i + di, j + dj]: `first` shifts
// the row index, `second` the column index, in latent cells. Pixel offsets
// divide by the backend's downsampling factor.
struct ViewTransform {
    enum class Kind { global_translation };
    Kind kind = Kind::global_translation;
    std::pair<double, double> delta_px{0.0, 0.0};
    std::pair<double, double> delta_latent{0.0, 0.0};
    Boundary boundary = Boundary::edge_replicate;
};

ViewTransform make_translation(double dx_px, double dy_px, int factor,
                               Boundary boundary = Boundary::edge_replicate);

// Bilinear gather with the boundary rule totalizing out-of-range reads.
// Integer offsets reproduce exact shifts; the timestep tag is preserved.
core::Latent warp_latent(const core::Latent& z, const ViewTransform& view);

// Per-image translation draw: both magnitudes uniform on
// [magnitude_lo, magnitude_hi], sign shared across axes (or independent).
ViewTransform sample_view_transform(double magnitude_lo, double magnitude_hi, bool independent_signs,
                                    int factor, Boundary boundary, core::RngStream& rng);

}  // namespace raven::attack
