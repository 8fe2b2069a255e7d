#pragma once

#include <string>

#include "raven/core/tensor.hpp"

namespace raven::attack {

// Cross-view correspondence attention: queries from the transformed path,
// keys/values from the reference path denoised in parallel.
//   out = softmax((Wq q_src)(Wk ref)^T * scale) (Wv ref)
// q_src and ref must agree in token count and feature dim; violations raise
// an error naming the layer.
core::Tensor view_attention(const core::Tensor& q_src, const core::Tensor& ref,
                            const core::Tensor& wq, const core::Tensor& wk,
                            const core::Tensor& wv, float scale,
                            const std::string& layer_name = "view_attention");

}  // namespace raven::attack
