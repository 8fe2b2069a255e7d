#include "raven/wm/fourier_ring.hpp"

#include <cmath>
#include <stdexcept>

#include "raven/backend/ddim.hpp"
#include "raven/core/sampling.hpp"
#include "raven/wm/transforms.hpp"

namespace raven::wm {

namespace {

void check_key(const WatermarkKey& key, int lat_h, int lat_w) {
    key.validate();
    if (key.scheme != Scheme::fourier_ring)
        throw std::invalid_argument("fourier_ring: wrong key scheme");
    if (key.latent_height != lat_h || key.latent_width != lat_w)
        throw std::invalid_argument("fourier_ring: key latent dims do not match backend");
}

std::vector<std::complex<double>> spectrum_of_channel0(const core::Latent& z) {
    std::vector<std::complex<double>> f(std::size_t(z.height) * z.width);
    for (int i = 0; i < z.height; ++i)
        for (int j = 0; j < z.width; ++j)
            f[std::size_t(i) * z.width + j] = {double(z.at(0, i, j)), 0.0};
    fft2(f, z.height, z.width, false);
    return f;
}

}  // namespace

core::ImageBuffer embed_fourier_ring(std::uint64_t prompt_seed, const WatermarkKey& key,
                                     const backend::BackendHandles& backend, int steps) {
    const int lat_h = key.latent_height, lat_w = key.latent_width;
    check_key(key, lat_h, lat_w);
    if (steps <= 0) steps = backend.schedule.T;

    auto rng = core::derive_stream(prompt_seed, "fourier-ring:init");
    core::Latent z = core::gaussian_like(backend.autoencoder.latent_channels, lat_h, lat_w, rng);

    // stamp the ring into channel 0's unitary spectrum
    auto spec = spectrum_of_channel0(z);
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (key.ring_mask[i]) spec[i] = key.ring_pattern[i];
    fft2(spec, lat_h, lat_w, true);
    for (int i = 0; i < lat_h; ++i)
        for (int j = 0; j < lat_w; ++j) z.at(0, i, j) = float(spec[std::size_t(i) * lat_w + j].real());

    z.timestep_tag = backend.schedule.T;
    const auto grid = backend::make_ddim_grid(backend.schedule.T, steps);
    core::Latent z0 = backend::ddim_sample(z, grid, backend, backend.null_conditioning, 1.0, nullptr);
    core::ImageBuffer img = backend.autoencoder.decode(z0);
    img.source_id = "fr-" + std::to_string(prompt_seed);
    return img;
}

double fourier_ring_statistic(const core::ImageBuffer& x, const WatermarkKey& key,
                              const backend::BackendHandles& backend, int steps) {
    if (steps <= 0) steps = backend.schedule.T;
    core::Latent z0 = backend.autoencoder.encode(x);
    check_key(key, z0.height, z0.width);

    const auto grid = backend::make_ddim_grid(backend.schedule.T, steps);
    core::Latent zT = backend::ddim_invert(z0, grid, backend.schedule.T, backend,
                                           backend.null_conditioning, 1.0);
    const auto spec = spectrum_of_channel0(zT);

    // conjugate symmetry: count each +/- frequency orbit once
    const int h = z0.height, w = z0.width;
    double dist = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const std::size_t idx = std::size_t(i) * w + j;
            if (!key.ring_mask[idx]) continue;
            const std::size_t mirror = std::size_t((h - i) % h) * w + std::size_t((w - j) % w);
            if (mirror < idx) continue;
            dist += std::abs(spec[idx] - key.ring_pattern[idx]);
            ++count;
        }
    if (count == 0) throw std::runtime_error("fourier_ring: empty half-spectrum mask");
    return -dist / double(count);
}

}  // namespace raven::wm
