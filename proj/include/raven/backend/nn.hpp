#pragma once

#include "raven/core/tensor.hpp"

namespace raven::backend::nn {

using core::Tensor;

// x: [C,H,W], weight: [outC,inC,kh,kw], bias: [outC]; zero padding.
// Implemented as im2col + gemm so the matmul kernels carry the load.
Tensor conv2d(const Tensor& x, const Tensor& weight, const Tensor& bias, int stride, int pad);

// GroupNorm over [C,H,W] with eps 1e-5, affine params gamma/beta: [C].
Tensor group_norm(const Tensor& x, int groups, const Tensor& gamma, const Tensor& beta);

Tensor silu(const Tensor& x);
Tensor add(const Tensor& a, const Tensor& b);

Tensor upsample_nearest_2x(const Tensor& x);

// y = W v + b; W: [out,in], v: [in]
Tensor linear(const Tensor& w, const Tensor& b, const Tensor& v);

// transformer-style sinusoidal embedding of an integer timestep
Tensor timestep_embedding(int t, int dim);

// [C,H,W] -> [H*W, C] token grid and back
Tensor to_tokens(const Tensor& chw);
Tensor from_tokens(const Tensor& tokens, int h, int w);

}  // namespace raven::backend::nn
