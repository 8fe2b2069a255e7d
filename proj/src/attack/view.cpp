#include "raven/attack/view.hpp"

#include <cmath>
#include <stdexcept>

namespace raven::attack {

namespace {

inline int resolve_index(int i, int n, Boundary b) {
    switch (b) {
        case Boundary::edge_replicate:
            return i < 0 ? 0 : (i >= n ? n - 1 : i);
        case Boundary::reflect:
            while (i < 0 || i >= n) {
                if (i < 0) i = -i;
                if (i >= n) i = 2 * n - 2 - i;
            }
            return i;
        case Boundary::wrap: {
            int m = i % n;
            return m < 0 ? m + n : m;
        }
    }
    return 0;
}

}  // namespace

ViewTransform make_translation(double dx_px, double dy_px, int factor, Boundary boundary) {
    if (factor <= 0) throw std::invalid_argument("make_translation: factor must be positive");
    ViewTransform v;
    v.delta_px = {dx_px, dy_px};
    v.delta_latent = {dx_px / factor, dy_px / factor};
    v.boundary = boundary;
    return v;
}

core::Latent warp_latent(const core::Latent& z, const ViewTransform& view) {
    core::check_finite(z, "warp_latent input");
    const double di = view.delta_latent.first;
    const double dj = view.delta_latent.second;
    if (di == 0.0 && dj == 0.0) return z;

    core::Latent out(z.channels, z.height, z.width);
    out.timestep_tag = z.timestep_tag;
    const int h = z.height, w = z.width;

    // integer taps and bilinear weights are shared by every row/column
    std::vector<int> y0(h), y1(h);
    std::vector<double> wy(h);
    for (int i = 0; i < h; ++i) {
        const double src = i + di;
        const double fl = std::floor(src);
        wy[i] = src - fl;
        y0[i] = resolve_index(int(fl), h, view.boundary);
        y1[i] = resolve_index(int(fl) + 1, h, view.boundary);
    }
    std::vector<int> x0(w), x1(w);
    std::vector<double> wx(w);
    for (int j = 0; j < w; ++j) {
        const double src = j + dj;
        const double fl = std::floor(src);
        wx[j] = src - fl;
        x0[j] = resolve_index(int(fl), w, view.boundary);
        x1[j] = resolve_index(int(fl) + 1, w, view.boundary);
    }

    for (int c = 0; c < z.channels; ++c)
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                const double a = z.at(c, y0[i], x0[j]);
                const double b = z.at(c, y0[i], x1[j]);
                const double d = z.at(c, y1[i], x0[j]);
                const double e = z.at(c, y1[i], x1[j]);
                const double top = a + (b - a) * wx[j];
                const double bot = d + (e - d) * wx[j];
                out.at(c, i, j) = float(top + (bot - top) * wy[i]);
            }
    return out;
}

ViewTransform sample_view_transform(double magnitude_lo, double magnitude_hi, bool independent_signs,
                                    int factor, Boundary boundary, core::RngStream& rng) {
    if (!(magnitude_lo > 0.0) || !(magnitude_hi >= magnitude_lo))
        throw std::invalid_argument("sample_view_transform: need 0 < lo <= hi");
    const double mag_x = rng.uniform(magnitude_lo, magnitude_hi);
    const double mag_y = rng.uniform(magnitude_lo, magnitude_hi);
    const double sign_x = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double sign_y = independent_signs ? (rng.uniform() < 0.5 ? -1.0 : 1.0) : sign_x;
    return make_translation(sign_x * mag_x, sign_y * mag_y, factor, boundary);
}

}  // namespace raven::attack
