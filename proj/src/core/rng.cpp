#include "raven/core/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "raven/core/sha256.hpp"

namespace raven::core {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    const std::uint32_t n0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t n2 = hi0 ^ ctr[3] ^ key[1];
    ctr[0] = n0;
    ctr[1] = lo1;
    ctr[2] = n2;
    ctr[3] = lo0;
}

}  // namespace

RngStream::RngStream(std::uint64_t root_seed, std::string_view stream_key)
    : root_seed_(root_seed), stream_key_(stream_key) {
    if (stream_key.empty()) throw std::invalid_argument("RngStream: stream_key must be nonempty");
    key_[0] = std::uint32_t(root_seed);
    key_[1] = std::uint32_t(root_seed >> 32);
    Sha256 h;
    h.update(stream_key.data(), stream_key.size());
    auto digest = h.finish();
    stream_words_[0] = std::uint32_t(digest[0]) | (std::uint32_t(digest[1]) << 8) |
                       (std::uint32_t(digest[2]) << 16) | (std::uint32_t(digest[3]) << 24);
    stream_words_[1] = std::uint32_t(digest[4]) | (std::uint32_t(digest[5]) << 8) |
                       (std::uint32_t(digest[6]) << 16) | (std::uint32_t(digest[7]) << 24);
}

void RngStream::refill() {
    std::uint32_t ctr[4] = {std::uint32_t(counter_), std::uint32_t(counter_ >> 32),
                            stream_words_[0], stream_words_[1]};
    std::uint32_t key[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    block_[0] = ctr[0];
    block_[1] = ctr[1];
    block_[2] = ctr[2];
    block_[3] = ctr[3];
    ++counter_;
    block_pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (block_pos_ >= 4) refill();
    return block_[block_pos_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double RngStream::uniform() {
    // 53-bit mantissa from one u64 draw
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // rejection sampling, no modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

double RngStream::gaussian() {
    if (have_cached_gaussian_) {
        have_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    // u1 in (0,1] keeps the log finite
    const double u1 = (double(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(theta);
    have_cached_gaussian_ = true;
    return r * std::cos(theta);
}

RngStream derive_stream(std::uint64_t root_seed, std::string_view stream_key) {
    return RngStream(root_seed, stream_key);
}

}  // namespace raven::core
