#include "raven/core/sampling.hpp"

#include <stdexcept>

namespace raven::core {

Latent gaussian_like(int channels, int height, int width, RngStream& rng) {
    if (channels <= 0 || height <= 0 || width <= 0)
        throw std::invalid_argument("gaussian_like: shape must be positive");
    Latent z(channels, height, width);
    for (float& v : z.values) v = float(rng.gaussian());
    return z;
}

}  // namespace raven::core
