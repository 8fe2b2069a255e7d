#include "raven/attack/view_attention.hpp"

#include <stdexcept>

#include "raven/core/attention.hpp"

namespace raven::attack {

core::Tensor view_attention(const core::Tensor& q_src, const core::Tensor& ref,
                            const core::Tensor& wq, const core::Tensor& wk,
                            const core::Tensor& wv, float scale, const std::string& layer_name) {
    if (q_src.ndim() != 2 || ref.ndim() != 2 || q_src.shape != ref.shape)
        throw std::invalid_argument("view_attention: token/feature dim mismatch at layer " +
                                    layer_name);
    return core::attend(q_src, ref, wq, wk, wv, scale);
}

}  // namespace raven::attack
