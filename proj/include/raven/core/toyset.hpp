#pragma once

#include "raven/core/image.hpp"
#include "raven/core/rng.hpp"

namespace raven::core {

// Procedural toy image domain the tiny diffusion backend was fitted on:
// soft-gradient background with 2..5 anti-aliased shapes, lightly smoothed.
// Deterministic given the stream.
ImageBuffer make_toy_image(int height, int width, RngStream& rng, std::string source_id = {});

// Convenience: image index i drawn from stream "toy:<i>" of root_seed.
ImageBuffer toy_image(std::uint64_t root_seed, int index, int height = 64, int width = 64);

}  // namespace raven::core
