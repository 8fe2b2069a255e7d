#include "raven/core/attention.hpp"

#include <stdexcept>

#include "raven/kernels/kernels.hpp"

namespace raven::core {

Tensor attend(const Tensor& q_src, const Tensor& kv_src, const Tensor& wq,
              const Tensor& wk, const Tensor& wv, float scale) {
    if (q_src.ndim() != 2 || kv_src.ndim() != 2)
        throw std::invalid_argument("attend: token grids must be 2-D [tokens, channels]");
    const int tq = q_src.dim(0), c = q_src.dim(1);
    const int tk = kv_src.dim(0);
    if (kv_src.dim(1) != c) throw std::invalid_argument("attend: channel mismatch");
    if (wq.ndim() != 2 || wk.ndim() != 2 || wv.ndim() != 2 || wq.dim(1) != c ||
        wk.dim(1) != c || wv.dim(1) != c)
        throw std::invalid_argument("attend: projection shape mismatch");
    const int d = wq.dim(0);
    if (wk.dim(0) != d) throw std::invalid_argument("attend: Wq/Wk dim mismatch");
    const int dv = wv.dim(0);

    const auto& k = kernels::ops();

    Tensor q({tq, d}), key({tk, d}), val({tk, dv});
    k.gemm_nt(q_src.data.data(), wq.data.data(), q.data.data(), tq, d, c);
    k.gemm_nt(kv_src.data.data(), wk.data.data(), key.data.data(), tk, d, c);
    k.gemm_nt(kv_src.data.data(), wv.data.data(), val.data.data(), tk, dv, c);

    Tensor scores({tq, tk});
    k.gemm_nt(q.data.data(), key.data.data(), scores.data.data(), tq, tk, d);
    k.scale_bias(scores.data.data(), scale, 0.0f, scores.data.data(), scores.numel());
    k.softmax_rows(scores.data.data(), tq, tk);

    Tensor out({tq, dv});
    k.gemm_nn(scores.data.data(), val.data.data(), out.data.data(), tq, dv, tk);
    return out;
}

}  // namespace raven::core
