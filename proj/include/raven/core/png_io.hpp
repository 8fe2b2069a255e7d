#pragma once

#include <string>

#include "raven/core/image.hpp"

namespace raven::core {

// 8-bit sRGB PNG, the only persisted image format. Values are quantized with
// round(v*255) on write and mapped back as v/255 on read.
void write_png(const std::string& path, const ImageBuffer& img);
ImageBuffer read_png(const std::string& path, std::string source_id = {});

}  // namespace raven::core
