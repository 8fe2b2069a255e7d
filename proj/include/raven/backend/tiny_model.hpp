#pragma once

#include <string>
#include <vector>

#include "raven/backend/backend.hpp"
#include "raven/backend/weights.hpp"

namespace raven::backend {

// Self-contained CPU backend: a small convolutional autoencoder (f = 4,
// 8 latent channels) and a UNet-style noise predictor with three
// self-attention sites, fitted offline on the procedural toy domain and
// shipped as fixed weights (T = 50 linear-beta schedule).
class TinyModel {
public:
    static constexpr int kFactor = 4;
    static constexpr int kLatentChannels = 8;
    static constexpr int kCondDim = 8;
    static constexpr int kTimesteps = 50;
    static constexpr double kBetaStart = 0.002;
    static constexpr double kBetaEnd = 0.25;

    explicit TinyModel(const std::string& weights_path);

    Latent encode(const ImageBuffer& img) const;
    ImageBuffer decode(const Latent& z) const;
    Latent predict_noise(const Latent& z, int t, const Conditioning& cond,
                         AttentionRouter* router) const;

    const std::string& fingerprint() const { return fingerprint_; }
    static std::vector<std::string> attention_sites();

private:
    Tensor res_block(const std::string& prefix, const Tensor& x, const Tensor& emb) const;
    Tensor attn_block(const std::string& prefix, const std::string& site_id, const Tensor& x,
                      int timestep, AttentionRouter* router) const;

    WeightFile w_;
    std::string fingerprint_;
    float latent_scale_ = 1.0f;
};

}  // namespace raven::backend
