#pragma once

#include "raven/core/color.hpp"
#include "raven/core/image.hpp"

namespace raven::attack {

using core::ImageBuffer;

// CIELAB channel swap: luminance from x_opt, chrominance from x_w, gamut
// clipped back to sRGB.
ImageBuffer color_transfer(const ImageBuffer& x_opt, const ImageBuffer& x_w,
                           double* clipped_fraction = nullptr);

struct ContrastStats {
    double mean_c = 0.0, std_c = 0.0;
    double mean_w = 0.0, std_w = 0.0;
    bool flat_source = false;  // sigma_c below threshold: scaling skipped
};

// Affine luminance alignment L' = (sigma_w/sigma_c)(L - mu_c) + mu_w computed
// in Lab; chroma comes from x_w. A flat source (sigma_c < 1e-6) degrades to a
// pure mean shift and is flagged in the stats.
ImageBuffer contrast_transfer(const ImageBuffer& x_c, const ImageBuffer& x_w,
                              ContrastStats* stats = nullptr, double* clipped_fraction = nullptr);

// unclipped L-channel remap, exposed for the statistic-exactness checks
std::vector<double> contrast_remap_luminance(const std::vector<double>& L_c,
                                             const std::vector<double>& L_w,
                                             ContrastStats* stats = nullptr);

}  // namespace raven::attack
