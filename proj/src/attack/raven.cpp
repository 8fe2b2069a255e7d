#include "raven/attack/raven.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "raven/attack/transfer.hpp"
#include "raven/core/sampling.hpp"
#include "raven/core/sha256.hpp"
#include "raven/kernels/kernels.hpp"

namespace raven::attack {

using backend::AttentionRouter;
using backend::Conditioning;
using core::Latent;
using nlohmann::json;

namespace {

std::string latent_hash(const Latent& z) {
    return core::Sha256::hex_digest(z.values.data(), z.values.size() * sizeof(float));
}

std::string image_hash(const ImageBuffer& img) {
    return core::Sha256::hex_digest(img.values.data(), img.values.size() * sizeof(float));
}

std::string boundary_name(Boundary b) {
    switch (b) {
        case Boundary::edge_replicate: return "edge_replicate";
        case Boundary::reflect: return "reflect";
        case Boundary::wrap: return "wrap";
    }
    return "?";
}

}  // namespace

void RavenConfig::validate() const {
    if (!(strength >= 0.0 && strength <= 1.0))
        throw std::invalid_argument("RavenConfig: strength must lie in [0,1]");
    if (steps < 1) throw std::invalid_argument("RavenConfig: steps must be >= 1");
    if (!(translation_min_px > 0.0) || !(translation_max_px >= translation_min_px))
        throw std::invalid_argument(
            "RavenConfig: translation interval must satisfy 0 < min <= max");
    if (noising_mode != "stochastic" && noising_mode != "ddim-inversion")
        throw std::invalid_argument("RavenConfig: unknown noising_mode " + noising_mode);
}

std::string AttackTrace::to_json() const {
    json j;
    j["tau"] = tau;
    j["delta_px"] = {delta_px.first, delta_px.second};
    j["delta_latent"] = {delta_latent.first, delta_latent.second};
    j["boundary"] = boundary;
    j["noising_mode"] = noising_mode;
    j["seed"] = seed;
    j["backend_fingerprint"] = backend_fingerprint;
    j["kernels"] = kernels;
    j["flat_luminance_warning"] = flat_luminance_warning;
    j["color_clipped_fraction"] = color_clipped_fraction;
    j["contrast_clipped_fraction"] = contrast_clipped_fraction;
    j["stage_hashes"] = stage_hashes;
    return j.dump(2);
}

void AttackTrace::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("AttackTrace: cannot write " + path);
    os << to_json() << "\n";
}

std::pair<ImageBuffer, AttackTrace> run_raven(const ImageBuffer& x_w, const RavenConfig& cfg,
                                              const BackendHandles& backend) {
    cfg.validate();
    const int f = backend.autoencoder.downsampling_factor;
    if (x_w.height % f != 0 || x_w.width % f != 0)
        throw std::invalid_argument("run_raven: image dims must be divisible by backend factor");

    AttackTrace trace;
    trace.noising_mode = cfg.noising_mode;
    trace.seed = cfg.seed;
    trace.boundary = boundary_name(cfg.boundary);
    trace.backend_fingerprint = backend.fingerprint;
    trace.kernels = std::string(kernels::active_name());

    const std::string img_key = "image:" + x_w.source_id;
    const Conditioning& cond = backend.null_conditioning;
    const auto grid = backend::make_ddim_grid(backend.schedule.T, cfg.steps);

    // stage 1: encode
    Latent z0 = backend.autoencoder.encode(x_w);
    trace.stage_hashes["encode"] = latent_hash(z0);

    // stage 2: partial inversion to tau (both modes share the grid-aligned tau)
    // tau lands on the sampling grid; with steps == T this is floor(s*T)
    const int tau = backend::grid_start_for_strength(grid, cfg.strength);
    trace.tau = tau;
    Latent z_tau;
    if (cfg.noising_mode == "stochastic") {
        auto rng = core::derive_stream(cfg.seed, img_key + ":stage:noise");
        z_tau = z0;
        z_tau.timestep_tag = tau;
        if (tau > 0) {
            core::Latent eps = core::gaussian_like(z0.channels, z0.height, z0.width, rng);
            const double ab = backend.schedule.alpha_bar_at(tau);
            kernels::ops().axpby(float(std::sqrt(ab)), z0.values.data(),
                                 float(std::sqrt(1.0 - ab)), eps.values.data(),
                                 z_tau.values.data(), z_tau.values.size());
        }
    } else {
        z_tau = backend::ddim_invert(z0, grid, tau, backend, cond, cfg.guidance);
    }
    trace.stage_hashes["noise"] = latent_hash(z_tau);

    // stage 3: viewpoint draw + latent warp
    auto view_rng = core::derive_stream(cfg.seed, img_key + ":stage:view");
    const ViewTransform view =
        sample_view_transform(cfg.translation_min_px, cfg.translation_max_px,
                              cfg.independent_signs, f, cfg.boundary, view_rng);
    trace.delta_px = view.delta_px;
    trace.delta_latent = view.delta_latent;
    Latent z_warp = warp_latent(z_tau, view);
    trace.stage_hashes["warp"] = latent_hash(z_warp);

    // stage 4: reference path with standard attention, recording the features
    // entering every self-attention site
    std::map<std::string, core::Tensor> ref_features;
    AttentionRouter ref_router;
    ref_router.mode = AttentionRouter::Mode::standard;
    ref_router.capture = [&ref_features](const std::string& site, int t, const core::Tensor& f) {
        ref_features[site + "@" + std::to_string(t)] = f;
    };
    Latent z_ref = backend::ddim_sample(z_tau, grid, backend, cond, cfg.guidance, &ref_router);
    trace.stage_hashes["reference"] = latent_hash(z_ref);

    // stage 5: attack path, queries from the warped latent, K/V routed to the
    // step-matched reference features
    AttentionRouter atk_router;
    atk_router.mode = AttentionRouter::Mode::view_guided;
    atk_router.reference_provider = [&ref_features](const std::string& site,
                                                    int t) -> const core::Tensor* {
        auto it = ref_features.find(site + "@" + std::to_string(t));
        return it == ref_features.end() ? nullptr : &it->second;
    };
    Latent z_attack = backend::ddim_sample(z_warp, grid, backend, cond, cfg.guidance, &atk_router);
    trace.stage_hashes["attack"] = latent_hash(z_attack);

    // stage 6: decode the attack path
    ImageBuffer x_opt = backend.autoencoder.decode(z_attack);
    x_opt.source_id = x_w.source_id;
    trace.stage_hashes["decode"] = image_hash(x_opt);

    // stage 7: CIELAB color + contrast correction against the input
    ImageBuffer result = std::move(x_opt);
    if (cfg.color_transfer) {
        result = color_transfer(result, x_w, &trace.color_clipped_fraction);
    }
    if (cfg.contrast_transfer) {
        ContrastStats stats;
        result = contrast_transfer(result, x_w, &stats, &trace.contrast_clipped_fraction);
        trace.flat_luminance_warning = stats.flat_source;
    }
    result.source_id = x_w.source_id;
    trace.stage_hashes["final"] = image_hash(result);
    return {std::move(result), std::move(trace)};
}

}  // namespace raven::attack
