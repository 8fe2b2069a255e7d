#include "raven/backend/tiny_model.hpp"

#include <cmath>
#include <stdexcept>

#include "raven/backend/nn.hpp"
#include "raven/core/attention.hpp"
#include "raven/kernels/kernels.hpp"

namespace raven::backend {

namespace {

constexpr int kGroups = 8;
constexpr int kEmbDim = 64;

core::Tensor latent_to_tensor(const Latent& z) {
    core::Tensor t({z.channels, z.height, z.width});
    t.data = z.values;
    return t;
}

Latent tensor_to_latent(const core::Tensor& t) {
    Latent z(t.dim(0), t.dim(1), t.dim(2));
    z.values = t.data;
    return z;
}

}  // namespace

TinyModel::TinyModel(const std::string& weights_path) : w_(load_weight_file(weights_path)) {
    fingerprint_ = "tiny-v1:" + w_.sha256;
    latent_scale_ = w_.scalar("ae.latent_scale");
    // shape-check a few anchors so factor mismatches fail at load time
    w_.get("ae.enc0.w", {32, 3, 3, 3});
    w_.get("ae.enc3.w", {kLatentChannels, 64, 3, 3});
    w_.get("dn.conv_in.w", {32, kLatentChannels, 3, 3});
    w_.get("dn.cemb.w", {kEmbDim, kCondDim});
}

std::vector<std::string> TinyModel::attention_sites() { return {"down.0", "mid.0", "up.0"}; }

Latent TinyModel::encode(const ImageBuffer& img) const {
    if (img.height < 8 || img.width < 8)
        throw std::runtime_error("tiny encode: image dims must be >= 8");
    if (img.height % kFactor != 0 || img.width % kFactor != 0)
        throw std::runtime_error("tiny encode: image dims must be divisible by factor 4");

    // interleaved -> planar
    core::Tensor x({3, img.height, img.width});
    const std::size_t plane = std::size_t(img.height) * img.width;
    for (std::size_t i = 0; i < plane; ++i)
        for (int c = 0; c < 3; ++c) x.data[std::size_t(c) * plane + i] = img.values[i * 3 + c];

    using namespace nn;
    x = silu(conv2d(x, w_.get("ae.enc0.w"), w_.get("ae.enc0.b"), 1, 1));
    x = silu(conv2d(x, w_.get("ae.enc1.w"), w_.get("ae.enc1.b"), 2, 1));
    x = silu(conv2d(x, w_.get("ae.enc2.w"), w_.get("ae.enc2.b"), 2, 1));
    x = conv2d(x, w_.get("ae.enc3.w"), w_.get("ae.enc3.b"), 1, 1);

    for (float& v : x.data) v *= latent_scale_;
    Latent z = tensor_to_latent(x);
    core::check_finite(z, "tiny encode");
    return z;
}

ImageBuffer TinyModel::decode(const Latent& z) const {
    if (z.channels != kLatentChannels)
        throw std::runtime_error("tiny decode: latent must have 8 channels");
    core::Tensor x = latent_to_tensor(z);
    for (float& v : x.data) v /= latent_scale_;

    using namespace nn;
    x = silu(conv2d(x, w_.get("ae.dec0.w"), w_.get("ae.dec0.b"), 1, 1));
    x = upsample_nearest_2x(x);
    x = silu(conv2d(x, w_.get("ae.dec1.w"), w_.get("ae.dec1.b"), 1, 1));
    x = upsample_nearest_2x(x);
    x = silu(conv2d(x, w_.get("ae.dec2.w"), w_.get("ae.dec2.b"), 1, 1));
    x = conv2d(x, w_.get("ae.dec3.w"), w_.get("ae.dec3.b"), 1, 1);

    ImageBuffer img(x.dim(1), x.dim(2));
    const std::size_t plane = std::size_t(img.height) * img.width;
    for (std::size_t i = 0; i < plane; ++i)
        for (int c = 0; c < 3; ++c) img.values[i * 3 + c] = x.data[std::size_t(c) * plane + i];
    return core::finalize_image(img, "tiny decode");
}

Tensor TinyModel::res_block(const std::string& p, const Tensor& x, const Tensor& emb) const {
    using namespace nn;
    Tensor a = group_norm(x, kGroups, w_.get(p + ".gn1.g"), w_.get(p + ".gn1.b"));
    a = conv2d(silu(a), w_.get(p + ".conv1.w"), w_.get(p + ".conv1.b"), 1, 1);
    // per-channel shift from the (time + conditioning) embedding
    const Tensor shift = linear(w_.get(p + ".emb.w"), w_.get(p + ".emb.b"), silu(emb));
    const std::size_t plane = std::size_t(a.dim(1)) * a.dim(2);
    for (int c = 0; c < a.dim(0); ++c) {
        const float s = shift.data[std::size_t(c)];
        float* dst = a.data.data() + std::size_t(c) * plane;
        for (std::size_t i = 0; i < plane; ++i) dst[i] += s;
    }
    Tensor b = group_norm(a, kGroups, w_.get(p + ".gn2.g"), w_.get(p + ".gn2.b"));
    b = conv2d(silu(b), w_.get(p + ".conv2.w"), w_.get(p + ".conv2.b"), 1, 1);
    return add(x, b);
}

Tensor TinyModel::attn_block(const std::string& p, const std::string& site_id, const Tensor& x,
                             int timestep, AttentionRouter* router) const {
    using namespace nn;
    const int c = x.dim(0), h = x.dim(1), w = x.dim(2);
    Tensor normed = group_norm(x, kGroups, w_.get(p + ".gn.g"), w_.get(p + ".gn.b"));
    Tensor tokens = to_tokens(normed);

    if (router && router->capture) router->capture(site_id, timestep, tokens);

    const Tensor* kv = &tokens;
    if (router && router->mode == AttentionRouter::Mode::view_guided) {
        if (!router->reference_provider)
            throw std::runtime_error("attention router: view_guided mode without provider");
        kv = router->reference_provider(site_id, timestep);
        if (!kv)
            throw std::runtime_error("attention router: no reference features for site " +
                                     site_id + " at t=" + std::to_string(timestep));
        if (kv->shape != tokens.shape)
            throw std::runtime_error("attention router: feature shape mismatch at site " + site_id);
    }

    const float scale = 1.0f / std::sqrt(float(c));
    Tensor attn_out =
        core::attend(tokens, *kv, w_.get(p + ".wq.w"), w_.get(p + ".wk.w"), w_.get(p + ".wv.w"), scale);

    // output projection, tokens x C
    Tensor proj({h * w, c});
    kernels::ops().gemm_nt(attn_out.data.data(), w_.get(p + ".wo.w").data.data(),
                           proj.data.data(), h * w, c, c);
    const Tensor& ob = w_.get(p + ".wo.b");
    for (int s = 0; s < h * w; ++s)
        for (int ch = 0; ch < c; ++ch) proj.data[std::size_t(s) * c + ch] += ob.data[std::size_t(ch)];

    return add(x, from_tokens(proj, h, w));
}

Latent TinyModel::predict_noise(const Latent& z, int t, const Conditioning& cond,
                                AttentionRouter* router) const {
    if (t < 1 || t > kTimesteps)
        throw std::runtime_error("tiny predict: timestep outside [1,T]");
    if (z.channels != kLatentChannels)
        throw std::runtime_error("tiny predict: latent must have 8 channels");
    if (int(cond.embedding.size()) != kCondDim)
        throw std::runtime_error("tiny predict: conditioning must have dim 8");

    using namespace nn;
    Tensor temb = timestep_embedding(t, 32);
    temb = linear(w_.get("dn.temb1.w"), w_.get("dn.temb1.b"), temb);
    temb = linear(w_.get("dn.temb2.w"), w_.get("dn.temb2.b"), silu(temb));
    Tensor cvec({kCondDim});
    cvec.data = cond.embedding;
    const Tensor cemb = linear(w_.get("dn.cemb.w"), w_.get("dn.cemb.b"), cvec);
    const Tensor emb = add(temb, cemb);

    Tensor h = conv2d(latent_to_tensor(z), w_.get("dn.conv_in.w"), w_.get("dn.conv_in.b"), 1, 1);
    h = res_block("dn.rb1", h, emb);
    const Tensor a1 = attn_block("dn.attn1", "down.0", h, t, router);
    h = conv2d(a1, w_.get("dn.down.w"), w_.get("dn.down.b"), 2, 1);
    h = res_block("dn.rb2", h, emb);
    h = attn_block("dn.attn2", "mid.0", h, t, router);
    h = res_block("dn.rb3", h, emb);
    h = conv2d(upsample_nearest_2x(h), w_.get("dn.up.w"), w_.get("dn.up.b"), 1, 1);
    h = add(h, a1);
    h = res_block("dn.rb4", h, emb);
    h = attn_block("dn.attn3", "up.0", h, t, router);
    h = group_norm(h, kGroups, w_.get("dn.gn_out.g"), w_.get("dn.gn_out.b"));
    h = conv2d(silu(h), w_.get("dn.conv_out.w"), w_.get("dn.conv_out.b"), 1, 1);

    Latent eps = tensor_to_latent(h);
    eps.timestep_tag = z.timestep_tag;
    core::check_finite(eps, "tiny predict_noise");
    return eps;
}

}  // namespace raven::backend
