#include "raven/core/toyset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raven/core/image_ops.hpp"

namespace raven::core {

namespace {

struct Rgb {
    double r, g, b;
};

Rgb draw_color(RngStream& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

inline double soft_cov(double signed_dist, double edge) {
    // 1 inside, 0 outside, linear ramp of width `edge`
    return std::clamp(0.5 - signed_dist / edge, 0.0, 1.0);
}

}  // namespace

ImageBuffer make_toy_image(int height, int width, RngStream& rng, std::string source_id) {
    ImageBuffer img(height, width, std::move(source_id));

    const Rgb c0 = draw_color(rng, 0.10, 0.90);
    const Rgb c1 = draw_color(rng, 0.10, 0.90);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double dx = std::cos(angle), dy = std::sin(angle);
    const double diag = std::hypot(double(width), double(height));

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double t = ((x - width / 2.0) * dx + (y - height / 2.0) * dy) / diag + 0.5;
            t = std::clamp(t, 0.0, 1.0);
            img.at(y, x, 0) = float(c0.r + (c1.r - c0.r) * t);
            img.at(y, x, 1) = float(c0.g + (c1.g - c0.g) * t);
            img.at(y, x, 2) = float(c0.b + (c1.b - c0.b) * t);
        }

    const int n_shapes = 2 + int(rng.uniform_index(4));
    const double dim = std::min(height, width);
    const double edge = 1.5;
    for (int s = 0; s < n_shapes; ++s) {
        const int kind = int(rng.uniform_index(3));  // 0 circle, 1 rect, 2 ellipse
        const Rgb col = draw_color(rng, 0.05, 0.95);
        const double alpha = rng.uniform(0.75, 1.0);
        const double cx = rng.uniform(0.15, 0.85) * width;
        const double cy = rng.uniform(0.15, 0.85) * height;
        double rx = rng.uniform(0.08, 0.28) * dim;
        double ry = (kind == 0) ? rx : rng.uniform(0.08, 0.28) * dim;

        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                double sd;
                if (kind == 1) {
                    const double ddx = std::abs(x - cx) - rx;
                    const double ddy = std::abs(y - cy) - ry;
                    sd = std::max(ddx, ddy);
                } else {
                    // scaled radial distance, approximately pixel units
                    const double q = std::hypot((x - cx) / rx, (y - cy) / ry);
                    sd = (q - 1.0) * std::min(rx, ry);
                }
                const double cov = alpha * soft_cov(sd, edge);
                if (cov <= 0.0) continue;
                img.at(y, x, 0) = float(img.at(y, x, 0) * (1 - cov) + col.r * cov);
                img.at(y, x, 1) = float(img.at(y, x, 1) * (1 - cov) + col.g * cov);
                img.at(y, x, 2) = float(img.at(y, x, 2) * (1 - cov) + col.b * cov);
            }
    }

    ImageBuffer smoothed = gaussian_blur(img, 0.6);
    smoothed.source_id = img.source_id;
    return finalize_image(smoothed, "make_toy_image");
}

ImageBuffer toy_image(std::uint64_t root_seed, int index, int height, int width) {
    RngStream rng = derive_stream(root_seed, "toy:" + std::to_string(index));
    return make_toy_image(height, width, rng, "toy-" + std::to_string(index));
}

}  // namespace raven::core
