#include "raven/core/base64.hpp"

#include <array>
#include <stdexcept>

namespace raven::core {

namespace {
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::array<int, 256> decode_table() {
    std::array<int, 256> t{};
    t.fill(-1);
    for (int i = 0; i < 64; ++i) t[std::size_t(kAlphabet[i])] = i;
    return t;
}
}  // namespace

std::string base64_encode(const void* data, std::size_t len) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (std::size_t i = 0; i < len; i += 3) {
        const std::uint32_t b0 = p[i];
        const std::uint32_t b1 = i + 1 < len ? p[i + 1] : 0;
        const std::uint32_t b2 = i + 2 < len ? p[i + 2] : 0;
        const std::uint32_t v = (b0 << 16) | (b1 << 8) | b2;
        out.push_back(kAlphabet[(v >> 18) & 0x3f]);
        out.push_back(kAlphabet[(v >> 12) & 0x3f]);
        out.push_back(i + 1 < len ? kAlphabet[(v >> 6) & 0x3f] : '=');
        out.push_back(i + 2 < len ? kAlphabet[v & 0x3f] : '=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& s) {
    static const auto table = decode_table();
    if (s.size() % 4 != 0) throw std::invalid_argument("base64: length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(s.size() / 4 * 3);
    for (std::size_t i = 0; i < s.size(); i += 4) {
        int vals[4];
        int pads = 0;
        for (int k = 0; k < 4; ++k) {
            const char c = s[i + std::size_t(k)];
            if (c == '=') {
                vals[k] = 0;
                ++pads;
            } else {
                vals[k] = table[std::size_t(std::uint8_t(c))];
                if (vals[k] < 0) throw std::invalid_argument("base64: invalid character");
            }
        }
        const std::uint32_t v = (std::uint32_t(vals[0]) << 18) | (std::uint32_t(vals[1]) << 12) |
                                (std::uint32_t(vals[2]) << 6) | std::uint32_t(vals[3]);
        out.push_back(std::uint8_t(v >> 16));
        if (pads < 2) out.push_back(std::uint8_t(v >> 8));
        if (pads < 1) out.push_back(std::uint8_t(v));
    }
    return out;
}

}  // namespace raven::core
