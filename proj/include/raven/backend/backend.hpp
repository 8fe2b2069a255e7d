#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "raven/core/image.hpp"
#include "raven/core/tensor.hpp"
#include "raven/backend/schedule.hpp"

namespace raven::backend {

using core::ImageBuffer;
using core::Latent;
using core::Tensor;

// Conditioning embedding; empty prompt == null conditioning (all zeros).
struct Conditioning {
    std::vector<float> embedding;
    bool is_null() const {
        for (float v : embedding)
            if (v != 0.0f) return false;
        return true;
    }
};

// Hook through which the attack injects cross-view K/V routing. In standard
// mode a denoiser run must be bit-identical to a run with no router at all:
// the self-attention sites consult the router only to pick the K/V source.
struct AttentionRouter {
    enum class Mode { standard, view_guided };
    Mode mode = Mode::standard;

    // view_guided: returns the reference feature grid [tokens, channels]
    // for (site, timestep); must not be null in that mode.
    std::function<const Tensor*(const std::string& site_id, int timestep)> reference_provider;

    // optional tap invoked at every self-attention site with the features
    // entering attention (used to record the reference path)
    std::function<void(const std::string& site_id, int timestep, const Tensor& feats)> capture;
};

struct AutoencoderHandle {
    std::function<Latent(const ImageBuffer&)> encode;
    std::function<ImageBuffer(const Latent&)> decode;
    int downsampling_factor = 0;
    int latent_channels = 0;
};

struct DenoiserHandle {
    // noise prediction for z_t at integer timestep t in [1,T]
    std::function<Latent(const Latent&, int, const Conditioning&, AttentionRouter*)> predict;
    std::string parameter_fingerprint;
    std::vector<std::string> attention_sites;
};

// Config-file section driving backend selection.
struct BackendSpec {
    std::string name;          // "tiny" or "external"
    std::string weights_path;  // weight file, or adapter executable for "external"
    int steps = 50;
    double guidance = 2.5;
    std::string noising_mode = "stochastic";  // or "ddim-inversion"
};

struct BackendHandles {
    AutoencoderHandle autoencoder;
    DenoiserHandle denoiser;
    NoiseSchedule schedule;
    Conditioning null_conditioning;
    std::string fingerprint;

    // keeps the underlying model alive for the lambdas above
    std::shared_ptr<void> impl;
};

// name "tiny": self-contained CPU backend from the bundled weight file.
// name "external": adapter executable speaking the documented protocol.
// Throws std::runtime_error with a descriptive message otherwise.
BackendHandles load_backend(const BackendSpec& spec);

// Resolution order for the tiny weight file: explicit path, then
// $RAVEN_WEIGHTS_DIR/tiny_v1.rvw, then the build-time data directory.
std::string resolve_tiny_weights(const std::string& explicit_path);

}  // namespace raven::backend
