#include "raven/backend/backend.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <stdexcept>

#include "raven/backend/tiny_model.hpp"

namespace raven::backend {

BackendHandles load_external_backend(const BackendSpec& spec);  // external_backend.cpp

std::string resolve_tiny_weights(const std::string& explicit_path) {
    namespace fs = std::filesystem;
    if (!explicit_path.empty()) {
        if (!fs::exists(explicit_path))
            throw std::runtime_error("tiny backend: weights not found at " + explicit_path);
        return explicit_path;
    }
    if (const char* dir = std::getenv("RAVEN_WEIGHTS_DIR")) {
        const fs::path p = fs::path(dir) / "tiny_v1.rvw";
        if (fs::exists(p)) return p.string();
    }
#ifdef RAVEN_DATA_DIR
    {
        const fs::path p = fs::path(RAVEN_DATA_DIR) / "tiny_v1.rvw";
        if (fs::exists(p)) return p.string();
    }
#endif
    throw std::runtime_error(
        "tiny backend: weights tiny_v1.rvw not found; set backend.weights_path or "
        "RAVEN_WEIGHTS_DIR");
}

BackendHandles load_backend(const BackendSpec& spec) {
    if (spec.name == "tiny") {
        auto model = std::make_shared<TinyModel>(resolve_tiny_weights(spec.weights_path));
        BackendHandles h;
        h.autoencoder.encode = [model](const ImageBuffer& img) { return model->encode(img); };
        h.autoencoder.decode = [model](const Latent& z) { return model->decode(z); };
        h.autoencoder.downsampling_factor = TinyModel::kFactor;
        h.autoencoder.latent_channels = TinyModel::kLatentChannels;
        h.denoiser.predict = [model](const Latent& z, int t, const Conditioning& c,
                                     AttentionRouter* r) { return model->predict_noise(z, t, c, r); };
        h.denoiser.parameter_fingerprint = model->fingerprint();
        h.denoiser.attention_sites = TinyModel::attention_sites();
        h.schedule = linear_beta_schedule(TinyModel::kTimesteps, TinyModel::kBetaStart,
                                          TinyModel::kBetaEnd);
        h.null_conditioning.embedding.assign(TinyModel::kCondDim, 0.0f);
        h.fingerprint = model->fingerprint();
        h.impl = model;
        return h;
    }
    if (spec.name == "external") {
        return load_external_backend(spec);
    }
    throw std::runtime_error("load_backend: unknown backend spec '" + spec.name +
                             "' (expected \"tiny\" or \"external\")");
}

}  // namespace raven::backend
