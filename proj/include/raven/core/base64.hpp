#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace raven::core {

std::string base64_encode(const void* data, std::size_t len);
std::vector<std::uint8_t> base64_decode(const std::string& s);

}  // namespace raven::core
