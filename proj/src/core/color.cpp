#include "raven/core/color.hpp"

#include <algorithm>
#include <cmath>

namespace raven::color {

double srgb_to_linear(double c) {
    return c <= kSrgbThreshold ? c / kSrgbSlope
                               : std::pow((c + 0.055) / 1.055, kSrgbGamma);
}

double linear_to_srgb(double c) {
    return c <= kSrgbThreshold / kSrgbSlope ? c * kSrgbSlope
                                            : 1.055 * std::pow(c, 1.0 / kSrgbGamma) - 0.055;
}

namespace {

inline double lab_f(double t) {
    return t > kCieEpsilon ? std::cbrt(t) : (kCieKappa * t + 16.0) / 116.0;
}

inline double lab_f_inv(double ft) {
    const double c = ft * ft * ft;
    return c > kCieEpsilon ? c : (116.0 * ft - 16.0) / kCieKappa;
}

}  // namespace

Lab lab_from_srgb(double r, double g, double b) {
    const double rl = srgb_to_linear(r), gl = srgb_to_linear(g), bl = srgb_to_linear(b);
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    const double fx = lab_f(x / kD65X), fy = lab_f(y / kD65Y), fz = lab_f(z / kD65Z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

void srgb_from_lab(const Lab& lab, double& r, double& g, double& b) {
    const double fy = (lab.L + 16.0) / 116.0;
    const double fx = fy + lab.a / 500.0;
    const double fz = fy - lab.b / 200.0;
    const double x = kD65X * lab_f_inv(fx);
    const double y_cube = fy * fy * fy;
    const double y = kD65Y * (lab.L > kCieKappa * kCieEpsilon ? y_cube : lab.L / kCieKappa);
    const double z = kD65Z * lab_f_inv(fz);

    const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    r = linear_to_srgb(rl);
    g = linear_to_srgb(gl);
    b = linear_to_srgb(bl);
}

LabPlanes to_lab(const core::ImageBuffer& img) {
    LabPlanes p;
    p.height = img.height;
    p.width = img.width;
    const std::size_t n = std::size_t(img.height) * img.width;
    p.L.resize(n);
    p.a.resize(n);
    p.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const float* px = &img.values[i * 3];
        const Lab lab = lab_from_srgb(px[0], px[1], px[2]);
        p.L[i] = lab.L;
        p.a[i] = lab.a;
        p.b[i] = lab.b;
    }
    return p;
}

core::ImageBuffer from_lab(const LabPlanes& planes, double* clipped_fraction) {
    core::ImageBuffer img(planes.height, planes.width);
    const std::size_t n = std::size_t(planes.height) * planes.width;
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r, g, b;
        srgb_from_lab({planes.L[i], planes.a[i], planes.b[i]}, r, g, b);
        const double ch[3] = {r, g, b};
        for (int c = 0; c < 3; ++c) {
            double v = ch[c];
            if (v < 0.0 || v > 1.0) {
                ++clipped;
                v = std::clamp(v, 0.0, 1.0);
            }
            img.values[i * 3 + std::size_t(c)] = float(v);
        }
    }
    if (clipped_fraction) *clipped_fraction = double(clipped) / double(n * 3);
    return finalize_image(img, "from_lab");
}

YcbcrPlanes to_ycbcr(const core::ImageBuffer& img) {
    YcbcrPlanes p;
    p.height = img.height;
    p.width = img.width;
    const std::size_t n = std::size_t(img.height) * img.width;
    p.y.resize(n);
    p.cb.resize(n);
    p.cr.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.values[i * 3], g = img.values[i * 3 + 1], b = img.values[i * 3 + 2];
        const double y = 0.299 * r + 0.587 * g + 0.114 * b;
        p.y[i] = y;
        p.cb[i] = 0.5 + (b - y) / 1.772;
        p.cr[i] = 0.5 + (r - y) / 1.402;
    }
    return p;
}

core::ImageBuffer from_ycbcr(const YcbcrPlanes& planes) {
    core::ImageBuffer img(planes.height, planes.width);
    const std::size_t n = std::size_t(planes.height) * planes.width;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = planes.y[i];
        const double r = y + 1.402 * (planes.cr[i] - 0.5);
        const double b = y + 1.772 * (planes.cb[i] - 0.5);
        const double g = (y - 0.299 * r - 0.114 * b) / 0.587;
        img.values[i * 3] = float(std::clamp(r, 0.0, 1.0));
        img.values[i * 3 + 1] = float(std::clamp(g, 0.0, 1.0));
        img.values[i * 3 + 2] = float(std::clamp(b, 0.0, 1.0));
    }
    return finalize_image(img, "from_ycbcr");
}

}  // namespace raven::color
