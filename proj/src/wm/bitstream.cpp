#include "raven/wm/bitstream.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "raven/core/color.hpp"
#include "raven/wm/transforms.hpp"

namespace raven::wm {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// public per-site dither in [0, step): keyed by block and coefficient index
inline double dither(std::uint64_t block, std::uint64_t coef, double step) {
    const std::uint64_t h = splitmix64(block * 0x10001ull + coef + 0xC0FFEEull);
    return double(h >> 11) * 0x1.0p-53 * step;
}

// quantize v onto the lattice of `bit`, centers offset by step/2 between bits
inline double qim_embed(double v, int bit, double d, double step) {
    const double offset = d + (bit ? step * 0.5 : 0.0);
    return step * std::round((v - offset) / step) + offset;
}

// negative -> bit 0 closer, positive -> bit 1 closer
inline double qim_evidence(double v, double d, double step) {
    const double d0 = std::abs(v - qim_embed(v, 0, d, step));
    const double d1 = std::abs(v - qim_embed(v, 1, d, step));
    return d0 - d1;
}

struct BlockLayout {
    int block = 0;       // block side in LL-band samples
    int blocks_x = 0, blocks_y = 0;
    int total() const { return blocks_x * blocks_y; }
};

BlockLayout choose_layout(int half_h, int half_w, std::size_t bits) {
    for (int b : {8, 4}) {
        BlockLayout l{b, half_w / b, half_h / b};
        if (l.total() >= int(bits)) return l;
    }
    BlockLayout l{4, half_w / 4, half_h / 4};
    throw std::runtime_error("bitstream embed: image too small for payload (" +
                             std::to_string(l.total()) + " blocks < " + std::to_string(bits) +
                             " bits)");
}

// coefficient pair indices for the chosen block size
void coef_pair(int n, int& c0, int& c1) {
    if (n == 8) {
        c0 = 2 * 8 + 3;
        c1 = 3 * 8 + 2;
    } else {
        c0 = 1 * 4 + 2;
        c1 = 2 * 4 + 1;
    }
}

template <typename PerBlock>
void for_each_block(std::vector<double>& ll, int half_h, int half_w, const BlockLayout& l,
                    PerBlock&& fn) {
    const BlockDct dct(l.block);
    std::vector<double> block(std::size_t(l.block) * l.block);
    std::vector<double> coeffs(block.size());
    for (int by = 0; by < l.blocks_y; ++by)
        for (int bx = 0; bx < l.blocks_x; ++bx) {
            const int bidx = by * l.blocks_x + bx;
            for (int y = 0; y < l.block; ++y)
                for (int x = 0; x < l.block; ++x)
                    block[std::size_t(y) * l.block + x] =
                        ll[std::size_t(by * l.block + y) * half_w + bx * l.block + x];
            dct.forward(block.data(), coeffs.data());
            const bool modified = fn(bidx, coeffs);
            if (modified) {
                dct.inverse(coeffs.data(), block.data());
                for (int y = 0; y < l.block; ++y)
                    for (int x = 0; x < l.block; ++x)
                        ll[std::size_t(by * l.block + y) * half_w + bx * l.block + x] =
                            block[std::size_t(y) * l.block + x];
            }
        }
}

// shared DWT wrapper: fn edits the LL band in place
ImageBuffer with_luminance_ll(const ImageBuffer& x, const std::string& stage,
                              const std::function<void(std::vector<double>&, int, int)>& fn) {
    color::YcbcrPlanes planes = color::to_ycbcr(x);
    const int h = x.height & ~1, w = x.width & ~1;
    if (h != x.height || w != x.width)
        throw std::runtime_error("bitstream embed: image dims must be even");
    HaarBands bands = haar_forward(planes.y, h, w);
    fn(bands.ll, bands.half_h, bands.half_w);
    planes.y = haar_inverse(bands);
    ImageBuffer out = color::from_ycbcr(planes);
    out.source_id = x.source_id;
    return core::finalize_image(out, stage);
}

void check_scheme(const WatermarkKey& key, Scheme expected) {
    key.validate();
    if (key.scheme != expected)
        throw std::invalid_argument("watermark key scheme does not match operation");
}

double leading_singular_value(const std::vector<double>& coeffs, int n,
                              Eigen::MatrixXd& u, Eigen::MatrixXd& v, Eigen::VectorXd& s) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = coeffs[std::size_t(i) * n + j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
    return s(0);
}

}  // namespace

ImageBuffer embed_dwt_dct(const ImageBuffer& x, const WatermarkKey& key) {
    check_scheme(key, Scheme::dwt_dct);
    const std::size_t bits = key.payload.size();
    return with_luminance_ll(x, "embed_dwt_dct", [&](std::vector<double>& ll, int hh, int hw) {
        const BlockLayout l = choose_layout(hh, hw, bits);
        int c0, c1;
        coef_pair(l.block, c0, c1);
        for_each_block(ll, hh, hw, l, [&](int bidx, std::vector<double>& coeffs) {
            const int bit = key.payload[std::size_t(bidx) % bits];
            coeffs[std::size_t(c0)] =
                qim_embed(coeffs[std::size_t(c0)], bit, dither(std::uint64_t(bidx), 0, key.strength),
                          key.strength);
            coeffs[std::size_t(c1)] =
                qim_embed(coeffs[std::size_t(c1)], bit, dither(std::uint64_t(bidx), 1, key.strength),
                          key.strength);
            return true;
        });
    });
}

std::vector<std::uint8_t> decode_dwt_dct(const ImageBuffer& x, const WatermarkKey& key) {
    check_scheme(key, Scheme::dwt_dct);
    const std::size_t bits = key.payload.size();
    std::vector<double> evidence(bits, 0.0);
    color::YcbcrPlanes planes = color::to_ycbcr(x);
    HaarBands bands = haar_forward(planes.y, x.height & ~1, x.width & ~1);
    const BlockLayout l = choose_layout(bands.half_h, bands.half_w, bits);
    int c0, c1;
    coef_pair(l.block, c0, c1);
    for_each_block(bands.ll, bands.half_h, bands.half_w, l, [&](int bidx, std::vector<double>& coeffs) {
        evidence[std::size_t(bidx) % bits] +=
            qim_evidence(coeffs[std::size_t(c0)], dither(std::uint64_t(bidx), 0, key.strength),
                         key.strength) +
            qim_evidence(coeffs[std::size_t(c1)], dither(std::uint64_t(bidx), 1, key.strength),
                         key.strength);
        return false;
    });
    std::vector<std::uint8_t> out(bits);
    for (std::size_t i = 0; i < bits; ++i) out[i] = evidence[i] > 0.0 ? 1 : 0;
    return out;
}

ImageBuffer embed_dwt_dct_svd(const ImageBuffer& x, const WatermarkKey& key) {
    check_scheme(key, Scheme::dwt_dct_svd);
    const std::size_t bits = key.payload.size();
    return with_luminance_ll(x, "embed_dwt_dct_svd", [&](std::vector<double>& ll, int hh, int hw) {
        BlockLayout l{4, hw / 4, hh / 4};
        if (l.total() < int(bits))
            throw std::runtime_error("bitstream embed: image too small for payload (" +
                                     std::to_string(l.total()) + " blocks < " +
                                     std::to_string(bits) + " bits)");
        Eigen::MatrixXd u, v;
        Eigen::VectorXd s;
        for_each_block(ll, hh, hw, l, [&](int bidx, std::vector<double>& coeffs) {
            const int bit = key.payload[std::size_t(bidx) % bits];
            const double s1 = leading_singular_value(coeffs, l.block, u, v, s);
            const double s1_new =
                qim_embed(s1, bit, dither(std::uint64_t(bidx), 0, key.strength), key.strength);
            s(0) = std::max(s1_new, 0.0);
            const Eigen::MatrixXd m = u * s.asDiagonal() * v.transpose();
            for (int i = 0; i < l.block; ++i)
                for (int j = 0; j < l.block; ++j) coeffs[std::size_t(i) * l.block + j] = m(i, j);
            return true;
        });
    });
}

std::vector<std::uint8_t> decode_dwt_dct_svd(const ImageBuffer& x, const WatermarkKey& key) {
    check_scheme(key, Scheme::dwt_dct_svd);
    const std::size_t bits = key.payload.size();
    std::vector<double> evidence(bits, 0.0);
    color::YcbcrPlanes planes = color::to_ycbcr(x);
    HaarBands bands = haar_forward(planes.y, x.height & ~1, x.width & ~1);
    BlockLayout l{4, bands.half_w / 4, bands.half_h / 4};
    if (l.total() < int(bits))
        throw std::runtime_error("bitstream decode: image too small for payload");
    Eigen::MatrixXd u, v;
    Eigen::VectorXd s;
    for_each_block(bands.ll, bands.half_h, bands.half_w, l, [&](int bidx, std::vector<double>& coeffs) {
        const double s1 = leading_singular_value(coeffs, l.block, u, v, s);
        evidence[std::size_t(bidx) % bits] +=
            qim_evidence(s1, dither(std::uint64_t(bidx), 0, key.strength), key.strength);
        return false;
    });
    std::vector<std::uint8_t> out(bits);
    for (std::size_t i = 0; i < bits; ++i) out[i] = evidence[i] > 0.0 ? 1 : 0;
    return out;
}

}  // namespace raven::wm
