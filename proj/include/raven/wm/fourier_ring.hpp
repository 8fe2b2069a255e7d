#pragma once

#include "raven/backend/backend.hpp"
#include "raven/wm/key.hpp"

namespace raven::wm {

// Semantic scheme tied to the diffusion initial noise: ring-shaped Fourier
// pattern stamped into channel 0 of z_T, full DDIM sampling with null
// conditioning, decoded to the watermarked image.
core::ImageBuffer embed_fourier_ring(std::uint64_t prompt_seed, const WatermarkKey& key,
                                     const backend::BackendHandles& backend, int steps = 0);

// DDIM-inverts the image to estimate the initial noise and compares masked
// Fourier coefficients; the statistic is the negated masked L1 distance on
// the half-spectrum (higher = more watermark-like).
double fourier_ring_statistic(const core::ImageBuffer& x, const WatermarkKey& key,
                              const backend::BackendHandles& backend, int steps = 0);

}  // namespace raven::wm
