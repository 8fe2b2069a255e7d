#include "raven/backend/nn.hpp"

#include <cmath>
#include <stdexcept>

#include "raven/kernels/kernels.hpp"

namespace raven::backend::nn {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Tensor conv2d(const Tensor& x, const Tensor& weight, const Tensor& bias, int stride, int pad) {
    require(x.ndim() == 3 && weight.ndim() == 4, "conv2d: rank mismatch");
    const int in_c = x.dim(0), h = x.dim(1), w = x.dim(2);
    const int out_c = weight.dim(0), kh = weight.dim(2), kw = weight.dim(3);
    require(weight.dim(1) == in_c, "conv2d: channel mismatch");
    require(int(bias.numel()) == out_c, "conv2d: bias size mismatch");

    const int oh = (h + 2 * pad - kh) / stride + 1;
    const int ow = (w + 2 * pad - kw) / stride + 1;
    const int k = in_c * kh * kw;
    const int cols = oh * ow;

    // im2col, column-major over output sites: patches[site][k]
    Tensor patches({cols, k});
    for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox) {
            float* dst = patches.data.data() + std::size_t(oy * ow + ox) * k;
            int idx = 0;
            for (int c = 0; c < in_c; ++c)
                for (int dy = 0; dy < kh; ++dy) {
                    const int iy = oy * stride - pad + dy;
                    for (int dx = 0; dx < kw; ++dx, ++idx) {
                        const int ix = ox * stride - pad + dx;
                        dst[idx] = (iy < 0 || iy >= h || ix < 0 || ix >= w)
                                       ? 0.0f
                                       : x.data[(std::size_t(c) * h + iy) * w + ix];
                    }
                }
        }

    // out[site][out_c] = patches * weight^T, then transpose into CHW
    Tensor mm({cols, out_c});
    kernels::ops().gemm_nt(patches.data.data(), weight.data.data(), mm.data.data(), cols, out_c, k);

    Tensor out({out_c, oh, ow});
    for (int c = 0; c < out_c; ++c) {
        const float b = bias.data[std::size_t(c)];
        float* dst = out.data.data() + std::size_t(c) * cols;
        for (int s = 0; s < cols; ++s) dst[s] = mm.data[std::size_t(s) * out_c + c] + b;
    }
    return out;
}

Tensor group_norm(const Tensor& x, int groups, const Tensor& gamma, const Tensor& beta) {
    require(x.ndim() == 3, "group_norm: rank mismatch");
    const int c = x.dim(0), h = x.dim(1), w = x.dim(2);
    require(c % groups == 0, "group_norm: channels not divisible by groups");
    require(int(gamma.numel()) == c && int(beta.numel()) == c, "group_norm: affine size mismatch");
    const int per = c / groups;
    const std::size_t plane = std::size_t(h) * w;
    constexpr double eps = 1e-5;

    Tensor out({c, h, w});
    const auto& k = kernels::ops();
    for (int g = 0; g < groups; ++g) {
        const float* src = x.data.data() + std::size_t(g) * per * plane;
        const std::size_t n = std::size_t(per) * plane;
        const double mean = k.sum(src, n) / double(n);
        const double var = k.sumsq(src, n) / double(n) - mean * mean;
        const float inv_std = float(1.0 / std::sqrt(std::max(var, 0.0) + eps));
        for (int j = 0; j < per; ++j) {
            const int ch = g * per + j;
            const float a = gamma.data[std::size_t(ch)] * inv_std;
            const float b = beta.data[std::size_t(ch)] -
                            a * float(mean);
            k.scale_bias(x.data.data() + std::size_t(ch) * plane, a, b,
                         out.data.data() + std::size_t(ch) * plane, plane);
        }
    }
    return out;
}

Tensor silu(const Tensor& x) {
    Tensor out(x.shape);
    kernels::ops().silu(x.data.data(), out.data.data(), x.numel());
    return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
    require(a.shape == b.shape, "add: shape mismatch");
    Tensor out(a.shape);
    kernels::ops().add(a.data.data(), b.data.data(), out.data.data(), a.numel());
    return out;
}

Tensor upsample_nearest_2x(const Tensor& x) {
    require(x.ndim() == 3, "upsample: rank mismatch");
    const int c = x.dim(0), h = x.dim(1), w = x.dim(2);
    Tensor out({c, h * 2, w * 2});
    for (int ch = 0; ch < c; ++ch)
        for (int y = 0; y < h * 2; ++y) {
            const float* src = x.data.data() + (std::size_t(ch) * h + y / 2) * w;
            float* dst = out.data.data() + (std::size_t(ch) * h * 2 + y) * (w * 2);
            for (int xx = 0; xx < w * 2; ++xx) dst[xx] = src[xx / 2];
        }
    return out;
}

Tensor linear(const Tensor& w, const Tensor& b, const Tensor& v) {
    require(w.ndim() == 2, "linear: weight rank");
    const int out_d = w.dim(0), in_d = w.dim(1);
    require(int(v.numel()) == in_d, "linear: input size mismatch");
    require(int(b.numel()) == out_d, "linear: bias size mismatch");
    Tensor out({out_d});
    kernels::ops().gemm_nt(v.data.data(), w.data.data(), out.data.data(), 1, out_d, in_d);
    kernels::ops().add(out.data.data(), b.data.data(), out.data.data(), std::size_t(out_d));
    return out;
}

Tensor timestep_embedding(int t, int dim) {
    require(dim % 2 == 0, "timestep_embedding: dim must be even");
    const int half = dim / 2;
    Tensor out({dim});
    for (int i = 0; i < half; ++i) {
        const double freq = std::exp(-std::log(10000.0) * double(i) / double(half));
        out.data[std::size_t(i)] = float(std::sin(double(t) * freq));
        out.data[std::size_t(half + i)] = float(std::cos(double(t) * freq));
    }
    return out;
}

Tensor to_tokens(const Tensor& chw) {
    require(chw.ndim() == 3, "to_tokens: rank mismatch");
    const int c = chw.dim(0), h = chw.dim(1), w = chw.dim(2);
    const int tokens = h * w;
    Tensor out({tokens, c});
    for (int ch = 0; ch < c; ++ch) {
        const float* src = chw.data.data() + std::size_t(ch) * tokens;
        for (int s = 0; s < tokens; ++s) out.data[std::size_t(s) * c + ch] = src[s];
    }
    return out;
}

Tensor from_tokens(const Tensor& tokens, int h, int w) {
    require(tokens.ndim() == 2 && tokens.dim(0) == h * w, "from_tokens: shape mismatch");
    const int c = tokens.dim(1);
    Tensor out({c, h, w});
    for (int ch = 0; ch < c; ++ch) {
        float* dst = out.data.data() + std::size_t(ch) * h * w;
        for (int s = 0; s < h * w; ++s) dst[s] = tokens.data[std::size_t(s) * c + ch];
    }
    return out;
}

}  // namespace raven::backend::nn
