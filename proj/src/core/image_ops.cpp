#include "raven/core/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace raven::core {

namespace {

inline int reflect_index(int i, int n) {
    // reflect without repeating the edge sample: -1 -> 1, n -> n-2
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

}  // namespace

ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma) {
    if (sigma <= 0.0) return img;
    const int radius = int(std::ceil(3.0 * sigma));
    std::vector<double> kernel(std::size_t(2 * radius + 1));
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[std::size_t(i + radius)] = std::exp(-0.5 * (double(i) * i) / (sigma * sigma));
        ksum += kernel[std::size_t(i + radius)];
    }
    for (double& k : kernel) k /= ksum;

    const int h = img.height, w = img.width;
    ImageBuffer tmp(h, w, img.source_id), out(h, w, img.source_id);
    // horizontal
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k)
                    acc += kernel[std::size_t(k + radius)] * img.at(y, reflect_index(x + k, w), c);
                tmp.at(y, x, c) = float(acc);
            }
    // vertical
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k)
                    acc += kernel[std::size_t(k + radius)] * tmp.at(reflect_index(y + k, h), x, c);
                out.at(y, x, c) = float(acc);
            }
    return finalize_image(out, "gaussian_blur");
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int out_h, int out_w) {
    ImageBuffer out(out_h, out_w, img.source_id);
    const double sy = double(img.height) / out_h;
    const double sx = double(img.width) / out_w;
    for (int y = 0; y < out_h; ++y) {
        const double fy = (y + 0.5) * sy - 0.5;
        int y0 = int(std::floor(fy));
        const double wy = fy - y0;
        int y1 = std::min(y0 + 1, img.height - 1);
        y0 = std::clamp(y0, 0, img.height - 1);
        for (int x = 0; x < out_w; ++x) {
            const double fx = (x + 0.5) * sx - 0.5;
            int x0 = int(std::floor(fx));
            const double wx = fx - x0;
            int x1 = std::min(x0 + 1, img.width - 1);
            x0 = std::clamp(x0, 0, img.width - 1);
            for (int c = 0; c < 3; ++c) {
                const double v = (1 - wy) * ((1 - wx) * img.at(y0, x0, c) + wx * img.at(y0, x1, c)) +
                                 wy * ((1 - wx) * img.at(y1, x0, c) + wx * img.at(y1, x1, c));
                out.at(y, x, c) = float(v);
            }
        }
    }
    return finalize_image(out, "resize_bilinear");
}

std::vector<float> luminance(const ImageBuffer& img) {
    std::vector<float> y(std::size_t(img.height) * img.width);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const float* p = &img.values[i * 3];
        y[i] = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    }
    return y;
}

}  // namespace raven::core
