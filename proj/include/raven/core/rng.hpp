#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace raven::core {

// Counter-based stream RNG (Philox4x32-10, Salmon et al. 2011). A stream is
// fully determined by (root_seed, stream_key): the seed becomes the Philox
// key and a SHA-256 hash of the stream key becomes the upper counter words,
// so derived streams never overlap and per-image parallelism cannot change
// any draw sequence.
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::string_view stream_key);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // uniform on [0,1)
    double uniform();
    // uniform on [lo,hi)
    double uniform(double lo, double hi);
    // uniform integer on [0,n)
    std::uint64_t uniform_index(std::uint64_t n);
    // standard normal via Box-Muller (pairs cached)
    double gaussian();

    std::uint64_t root_seed() const { return root_seed_; }
    const std::string& stream_key() const { return stream_key_; }

private:
    void refill();

    std::uint64_t root_seed_;
    std::string stream_key_;
    std::uint32_t key_[2];
    std::uint32_t stream_words_[2];
    std::uint64_t counter_ = 0;
    std::uint32_t block_[4];
    int block_pos_ = 4;
    bool have_cached_gaussian_ = false;
    double cached_gaussian_ = 0.0;
};

// Spec-level constructor: distinct keys give independent streams.
RngStream derive_stream(std::uint64_t root_seed, std::string_view stream_key);

}  // namespace raven::core
