#pragma once

#include "raven/backend/backend.hpp"
#include "raven/core/image.hpp"
#include "raven/wm/key.hpp"

namespace raven::wm {

// Unified keyed detector. Bitstream schemes report bit accuracy against the
// key payload (and return the decoded bits); the semantic scheme reports the
// negated ring distance and needs the diffusion backend. decision = detected
// iff statistic >= threshold.
DetectionOutcome detect(const core::ImageBuffer& x, const WatermarkKey& key,
                        const backend::BackendHandles* backend, double threshold);

// Scheme dispatcher for embedding, shared by the CLI and tests. prompt_seed
// drives generation for the semantic scheme and is ignored by the bitstream
// schemes (they embed into `x`).
core::ImageBuffer embed(const core::ImageBuffer& x, const WatermarkKey& key,
                        const backend::BackendHandles* backend, std::uint64_t prompt_seed = 0);

}  // namespace raven::wm
