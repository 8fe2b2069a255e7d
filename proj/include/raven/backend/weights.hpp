#pragma once

#include <map>
#include <string>

#include "raven/core/tensor.hpp"

namespace raven::backend {

// Flat named-tensor container ("RVNW" format, float32 little-endian).
struct WeightFile {
    std::map<std::string, core::Tensor> tensors;
    std::string sha256;  // fingerprint of the file bytes

    const core::Tensor& get(const std::string& name) const;
    // validates presence and exact shape
    const core::Tensor& get(const std::string& name, const std::vector<int>& shape) const;
    float scalar(const std::string& name) const;
};

WeightFile load_weight_file(const std::string& path);
void save_weight_file(const std::string& path, const std::map<std::string, core::Tensor>& tensors);

}  // namespace raven::backend
