#pragma once

#include "raven/core/rng.hpp"
#include "raven/core/tensor.hpp"

namespace raven::core {

// i.i.d. standard-normal latent of the given shape. Zero-sized shapes are an
// error.
Latent gaussian_like(int channels, int height, int width, RngStream& rng);

}  // namespace raven::core
