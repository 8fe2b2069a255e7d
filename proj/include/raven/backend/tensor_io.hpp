#pragma once

#include <string>

#include "raven/core/tensor.hpp"

namespace raven::backend {

// Single-tensor binary format ("RVT1", u32 ndim, u32 dims, f32 data) used by
// the external-adapter protocol.
void save_tensor_bin(const std::string& path, const core::Tensor& t);
core::Tensor load_tensor_bin(const std::string& path);

void save_latent_bin(const std::string& path, const core::Latent& z);
core::Latent load_latent_bin(const std::string& path);

}  // namespace raven::backend
