#pragma once

#include <utility>
#include <vector>

#include "raven/backend/backend.hpp"
#include "raven/core/rng.hpp"

namespace raven::backend {

// Stochastic partial noising: z_tau = sqrt(abar_tau) z + sqrt(1-abar_tau) eps
// with tau = floor(s*T). s = 0 returns z unchanged (tagged 0).
std::pair<Latent, int> forward_noise(const Latent& z, double strength,
                                     const NoiseSchedule& schedule, core::RngStream& rng);

// DDIM timestep grid: ascending t_i = round(i*T/steps) for i = 1..steps,
// plus the implicit terminus t = 0. steps must lie in [1, T].
struct DdimGrid {
    std::vector<int> timesteps;  // ascending, excludes 0
    int T = 0;

    // index into timesteps, or -1 when t == 0; throws if t is off-grid
    int index_of(int t) const;
};

DdimGrid make_ddim_grid(int T, int steps);

// Largest grid timestep <= floor(s*T); 0 when the partial trajectory is
// empty. Equals floor(s*T) exactly when steps == T.
int grid_start_for_strength(const DdimGrid& grid, double strength);

// Deterministic DDIM denoising from z.timestep_tag down to 0. The router is
// consulted at every self-attention site. Tag 0 returns the latent unchanged.
Latent ddim_sample(const Latent& z_tau, const DdimGrid& grid, const BackendHandles& backend,
                   const Conditioning& cond, double guidance, AttentionRouter* router);

// Deterministic DDIM inversion of a clean latent up to grid timestep
// target_t (must be on the grid; target_t == 0 is the identity).
Latent ddim_invert(const Latent& z0, const DdimGrid& grid, int target_t,
                   const BackendHandles& backend, const Conditioning& cond, double guidance);

}  // namespace raven::backend
