#include "raven/core/image.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "raven/core/tensor.hpp"
#include "raven/kernels/kernels.hpp"

namespace raven::core {

ImageBuffer::ImageBuffer(int h, int w, std::string id) : height(h), width(w), source_id(std::move(id)) {
    if (h <= 0 || w <= 0) throw std::invalid_argument("ImageBuffer: dims must be positive");
    values.assign(std::size_t(h) * w * 3, 0.0f);
}

ImageBuffer& finalize_image(ImageBuffer& img, const std::string& stage) {
    for (float& v : img.values) {
        if (!std::isfinite(v))
            throw std::runtime_error("non-finite image value at stage: " + stage);
        v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
    }
    return img;
}

void validate_image(const ImageBuffer& img) {
    if (img.height <= 0 || img.width <= 0)
        throw std::runtime_error("ImageBuffer: non-positive dims");
    if (img.values.size() != std::size_t(img.height) * img.width * 3)
        throw std::runtime_error("ImageBuffer: value count does not match dims");
    for (float v : img.values)
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
            throw std::runtime_error("ImageBuffer: value outside [0,1]");
}

double mse(const ImageBuffer& a, const ImageBuffer& b) {
    if (!a.same_dims(b)) throw std::invalid_argument("mse: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = double(a.values[i]) - b.values[i];
        acc += d * d;
    }
    return acc / double(a.values.size());
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(m);
}

void check_finite(const Latent& z, const std::string& stage) {
    for (float v : z.values)
        if (!std::isfinite(v))
            throw std::runtime_error("non-finite latent value at stage: " + stage);
}

double relative_l2(const Latent& a, const Latent& b) {
    if (!a.same_dims(b)) throw std::invalid_argument("relative_l2: dimension mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = double(a.values[i]) - b.values[i];
        num += d * d;
        den += double(b.values[i]) * b.values[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

}  // namespace raven::core
