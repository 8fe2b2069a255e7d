#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace raven::core {

// Dense row-major float tensor; used for network weights and token grids.
struct Tensor {
    std::vector<int> shape;
    std::vector<float> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.assign(numel(), 0.0f);
    }

    std::size_t numel() const {
        std::size_t n = 1;
        for (int d : shape) n *= std::size_t(d);
        return n;
    }
    int dim(int i) const { return shape[std::size_t(i)]; }
    int ndim() const { return int(shape.size()); }
};

// C x H x W latent grid in a diffusion model's latent space. timestep_tag
// marks the t for which this is a valid z_t (0 = fully denoised).
struct Latent {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<float> values;  // planar C*H*W
    std::optional<int> timestep_tag;

    Latent() = default;
    Latent(int c, int h, int w) : channels(c), height(h), width(w) {
        values.assign(std::size_t(c) * h * w, 0.0f);
    }

    float& at(int c, int y, int x) {
        return values[(std::size_t(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return values[(std::size_t(c) * height + y) * width + x];
    }
    std::size_t size() const { return values.size(); }
    bool same_dims(const Latent& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

// Throws std::runtime_error naming `stage` if any value is non-finite.
void check_finite(const Latent& z, const std::string& stage);

double relative_l2(const Latent& a, const Latent& b);

}  // namespace raven::core
