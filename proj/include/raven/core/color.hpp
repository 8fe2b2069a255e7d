#pragma once

#include <vector>

#include "raven/core/image.hpp"

namespace raven::color {

// sRGB <-> CIELAB conversion unit. All constants live here and are shared by
// the pipeline and the tests.
inline constexpr double kD65X = 0.95047;
inline constexpr double kD65Y = 1.0;
inline constexpr double kD65Z = 1.08883;
inline constexpr double kSrgbThreshold = 0.04045;     // encoded-domain linearization knee
inline constexpr double kSrgbSlope = 12.92;
inline constexpr double kSrgbGamma = 2.4;
inline constexpr double kCieEpsilon = 216.0 / 24389.0;
inline constexpr double kCieKappa = 24389.0 / 27.0;

struct Lab {
    double L = 0.0, a = 0.0, b = 0.0;
};

double srgb_to_linear(double c);
double linear_to_srgb(double c);

Lab lab_from_srgb(double r, double g, double b);
// unclamped sRGB; caller clips to gamut
void srgb_from_lab(const Lab& lab, double& r, double& g, double& b);

struct LabPlanes {
    int height = 0, width = 0;
    std::vector<double> L, a, b;
};

LabPlanes to_lab(const core::ImageBuffer& img);
// converts back to sRGB, clipping to [0,1]; clipped_fraction reports how many
// channel samples left gamut
core::ImageBuffer from_lab(const LabPlanes& planes, double* clipped_fraction = nullptr);

// BT.601 full-range luma/chroma planes, exactly invertible in double
struct YcbcrPlanes {
    int height = 0, width = 0;
    std::vector<double> y, cb, cr;
};

YcbcrPlanes to_ycbcr(const core::ImageBuffer& img);
core::ImageBuffer from_ycbcr(const YcbcrPlanes& planes);

}  // namespace raven::color
