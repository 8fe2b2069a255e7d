#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace raven::core {

// FIPS 180-4 SHA-256, used for run manifests, weight fingerprints and
// per-stage trace hashes.
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> finish();

    static std::string hex_digest(const void* data, std::size_t len);
    static std::string hex_digest(const std::string& s);
    static std::string hex_digest_file(const std::string& path);

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t total_len_ = 0;
    std::uint8_t buffer_[64];
    std::size_t buffer_len_ = 0;
};

std::string to_hex(const std::uint8_t* data, std::size_t len);

}  // namespace raven::core
