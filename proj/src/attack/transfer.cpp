#include "raven/attack/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace raven::attack {

namespace {

void moments(const std::vector<double>& v, double& mean, double& sd) {
    double acc = 0.0;
    for (double x : v) acc += x;
    mean = acc / double(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    sd = std::sqrt(var / double(v.size()));
}

}  // namespace

ImageBuffer color_transfer(const ImageBuffer& x_opt, const ImageBuffer& x_w,
                           double* clipped_fraction) {
    if (!x_opt.same_dims(x_w)) throw std::invalid_argument("color_transfer: dimension mismatch");
    color::LabPlanes opt = color::to_lab(x_opt);
    const color::LabPlanes w = color::to_lab(x_w);
    opt.a = w.a;
    opt.b = w.b;
    ImageBuffer out = color::from_lab(opt, clipped_fraction);
    out.source_id = x_opt.source_id;
    return out;
}

std::vector<double> contrast_remap_luminance(const std::vector<double>& L_c,
                                             const std::vector<double>& L_w,
                                             ContrastStats* stats) {
    if (L_c.size() != L_w.size() || L_c.empty())
        throw std::invalid_argument("contrast_remap_luminance: size mismatch");
    ContrastStats st;
    moments(L_c, st.mean_c, st.std_c);
    moments(L_w, st.mean_w, st.std_w);

    std::vector<double> out(L_c.size());
    if (st.std_c < 1e-6) {
        // flat luminance: scaling is ill-posed, apply the mean shift only
        st.flat_source = true;
        const double shift = st.mean_w - st.mean_c;
        for (std::size_t i = 0; i < L_c.size(); ++i) out[i] = L_c[i] + shift;
    } else {
        const double gain = st.std_w / st.std_c;
        for (std::size_t i = 0; i < L_c.size(); ++i)
            out[i] = gain * (L_c[i] - st.mean_c) + st.mean_w;
    }
    if (stats) *stats = st;
    return out;
}

ImageBuffer contrast_transfer(const ImageBuffer& x_c, const ImageBuffer& x_w,
                              ContrastStats* stats, double* clipped_fraction) {
    if (!x_c.same_dims(x_w)) throw std::invalid_argument("contrast_transfer: dimension mismatch");
    const color::LabPlanes c = color::to_lab(x_c);
    const color::LabPlanes w = color::to_lab(x_w);

    color::LabPlanes out;
    out.height = c.height;
    out.width = c.width;
    out.L = contrast_remap_luminance(c.L, w.L, stats);
    out.a = w.a;
    out.b = w.b;
    ImageBuffer img = color::from_lab(out, clipped_fraction);
    img.source_id = x_c.source_id;
    return img;
}

}  // namespace raven::attack
