#include "raven/backend/ddim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "raven/core/sampling.hpp"
#include "raven/kernels/kernels.hpp"

namespace raven::backend {

namespace {

// Prefixes attention-site ids so classifier-free-guidance branches keep
// separate capture/replay keys.
AttentionRouter branch_router(const AttentionRouter& base, const std::string& prefix) {
    AttentionRouter r;
    r.mode = base.mode;
    if (base.reference_provider)
        r.reference_provider = [&base, prefix](const std::string& site, int t) {
            return base.reference_provider(prefix + site, t);
        };
    if (base.capture)
        r.capture = [&base, prefix](const std::string& site, int t, const Tensor& feats) {
            base.capture(prefix + site, t, feats);
        };
    return r;
}

Latent predict_cfg(const Latent& z, int t, const BackendHandles& backend, const Conditioning& cond,
                   double guidance, AttentionRouter* router) {
    const bool null_cond = cond.embedding == backend.null_conditioning.embedding;
    if (guidance == 1.0 || null_cond) {
        return backend.denoiser.predict(z, t, cond, router);
    }
    AttentionRouter ru, rc;
    AttentionRouter* pu = nullptr;
    AttentionRouter* pc = nullptr;
    if (router) {
        ru = branch_router(*router, "u:");
        rc = branch_router(*router, "c:");
        pu = &ru;
        pc = &rc;
    }
    const Latent eps_u = backend.denoiser.predict(z, t, backend.null_conditioning, pu);
    const Latent eps_c = backend.denoiser.predict(z, t, cond, pc);
    Latent eps = eps_u;
    kernels::ops().axpby(float(1.0 - guidance), eps_u.values.data(), float(guidance),
                         eps_c.values.data(), eps.values.data(), eps.values.size());
    return eps;
}

// one deterministic DDIM transition between adjacent grid points
void ddim_step(Latent& z, const Latent& eps, double ab_from, double ab_to) {
    const auto& k = kernels::ops();
    const float inv_sqrt_from = float(1.0 / std::sqrt(ab_from));
    const float noise_from = float(std::sqrt(1.0 - ab_from));
    const float sqrt_to = float(std::sqrt(ab_to));
    const float noise_to = float(std::sqrt(1.0 - ab_to));
    // x0 = (z - noise_from * eps) / sqrt(ab_from); z' = sqrt_to * x0 + noise_to * eps
    const float a = sqrt_to * inv_sqrt_from;
    const float b = noise_to - sqrt_to * inv_sqrt_from * noise_from;
    k.axpby(a, z.values.data(), b, eps.values.data(), z.values.data(), z.values.size());
}

}  // namespace

std::pair<Latent, int> forward_noise(const Latent& z, double strength,
                                     const NoiseSchedule& schedule, core::RngStream& rng) {
    if (!(strength >= 0.0 && strength <= 1.0))
        throw std::invalid_argument("forward_noise: strength must lie in [0,1]");
    core::check_finite(z, "forward_noise input");
    const int tau = int(std::floor(strength * schedule.T));
    Latent out = z;
    out.timestep_tag = tau;
    if (tau == 0) return {out, 0};

    core::Latent eps = core::gaussian_like(z.channels, z.height, z.width, rng);
    const double ab = schedule.alpha_bar_at(tau);
    kernels::ops().axpby(float(std::sqrt(ab)), z.values.data(), float(std::sqrt(1.0 - ab)),
                         eps.values.data(), out.values.data(), out.values.size());
    return {out, tau};
}

int DdimGrid::index_of(int t) const {
    if (t == 0) return -1;
    auto it = std::lower_bound(timesteps.begin(), timesteps.end(), t);
    if (it == timesteps.end() || *it != t)
        throw std::invalid_argument("ddim grid: timestep " + std::to_string(t) +
                                    " is not on the sampling grid");
    return int(it - timesteps.begin());
}

DdimGrid make_ddim_grid(int T, int steps) {
    if (steps < 1) throw std::invalid_argument("ddim grid: steps must be >= 1");
    if (steps > T) throw std::invalid_argument("ddim grid: steps must not exceed T");
    DdimGrid g;
    g.T = T;
    g.timesteps.reserve(std::size_t(steps));
    for (int i = 1; i <= steps; ++i)
        g.timesteps.push_back(int(std::llround(double(i) * T / steps)));
    return g;
}

int grid_start_for_strength(const DdimGrid& grid, double strength) {
    if (!(strength >= 0.0 && strength <= 1.0))
        throw std::invalid_argument("strength must lie in [0,1]");
    const int tau = int(std::floor(strength * grid.T));
    int best = 0;
    for (int t : grid.timesteps) {
        if (t <= tau) best = t;
        else break;
    }
    return best;
}

Latent ddim_sample(const Latent& z_tau, const DdimGrid& grid, const BackendHandles& backend,
                   const Conditioning& cond, double guidance, AttentionRouter* router) {
    if (!z_tau.timestep_tag)
        throw std::invalid_argument("ddim_sample: latent has no timestep_tag");
    Latent z = z_tau;
    const int start = *z_tau.timestep_tag;
    if (start == 0) return z;

    const int idx = grid.index_of(start);
    for (int i = idx; i >= 0; --i) {
        const int t = grid.timesteps[std::size_t(i)];
        const int t_prev = i > 0 ? grid.timesteps[std::size_t(i - 1)] : 0;
        const Latent eps = predict_cfg(z, t, backend, cond, guidance, router);
        ddim_step(z, eps, backend.schedule.alpha_bar_at(t), backend.schedule.alpha_bar_at(t_prev));
        core::check_finite(z, "ddim_sample step t=" + std::to_string(t));
        z.timestep_tag = t_prev;
    }
    return z;
}

Latent ddim_invert(const Latent& z0, const DdimGrid& grid, int target_t,
                   const BackendHandles& backend, const Conditioning& cond, double guidance) {
    core::check_finite(z0, "ddim_invert input");
    Latent z = z0;
    z.timestep_tag = 0;
    if (target_t == 0) return z;

    const int idx_target = grid.index_of(target_t);
    for (int i = 0; i <= idx_target; ++i) {
        const int t_next = grid.timesteps[std::size_t(i)];
        const int t_src = i > 0 ? grid.timesteps[std::size_t(i - 1)] : 0;
        // the noise estimate at the destination timestep drives the inverse step
        const Latent eps = predict_cfg(z, t_next, backend, cond, guidance, nullptr);
        ddim_step(z, eps, backend.schedule.alpha_bar_at(t_src), backend.schedule.alpha_bar_at(t_next));
        core::check_finite(z, "ddim_invert step t=" + std::to_string(t_next));
        z.timestep_tag = t_next;
    }
    return z;
}

}  // namespace raven::backend
