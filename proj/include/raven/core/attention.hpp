#pragma once

#include "raven/core/tensor.hpp"

namespace raven::core {

// Scaled dot-product attention with split query / key-value sources:
//   out = softmax( (q_src Wq^T)(kv_src Wk^T)^T * scale ) (kv_src Wv^T)
// q_src: [Tq, C], kv_src: [Tk, C], Wq/Wk: [d, C], Wv: [dv, C].
// The same primitive serves ordinary self-attention (q_src == kv_src) and
// cross-view routing (kv from a reference path).
Tensor attend(const Tensor& q_src, const Tensor& kv_src, const Tensor& wq,
              const Tensor& wk, const Tensor& wv, float scale);

}  // namespace raven::core
