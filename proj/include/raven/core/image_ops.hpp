#pragma once

#include "raven/core/image.hpp"

namespace raven::core {

// Separable Gaussian blur, kernel width 2*ceil(3*sigma)+1, reflect padding.
// sigma <= 0 returns the input unchanged.
ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma);

ImageBuffer resize_bilinear(const ImageBuffer& img, int out_h, int out_w);

// BT.601 full-range luma in [0,1]
std::vector<float> luminance(const ImageBuffer& img);

}  // namespace raven::core
