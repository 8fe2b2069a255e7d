#include "raven/wm/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace raven::wm {

HaarBands haar_forward(const std::vector<double>& src, int h, int w) {
    if (h % 2 != 0 || w % 2 != 0) throw std::invalid_argument("haar_forward: dims must be even");
    HaarBands b;
    b.half_h = h / 2;
    b.half_w = w / 2;
    const std::size_t n = std::size_t(b.half_h) * b.half_w;
    b.ll.resize(n);
    b.lh.resize(n);
    b.hl.resize(n);
    b.hh.resize(n);
    for (int i = 0; i < b.half_h; ++i)
        for (int j = 0; j < b.half_w; ++j) {
            const double a = src[std::size_t(2 * i) * w + 2 * j];
            const double c = src[std::size_t(2 * i) * w + 2 * j + 1];
            const double d = src[std::size_t(2 * i + 1) * w + 2 * j];
            const double e = src[std::size_t(2 * i + 1) * w + 2 * j + 1];
            const std::size_t k = std::size_t(i) * b.half_w + j;
            b.ll[k] = (a + c + d + e) / 2.0;
            b.lh[k] = (a - c + d - e) / 2.0;
            b.hl[k] = (a + c - d - e) / 2.0;
            b.hh[k] = (a - c - d + e) / 2.0;
        }
    return b;
}

std::vector<double> haar_inverse(const HaarBands& b) {
    const int h = b.half_h * 2, w = b.half_w * 2;
    std::vector<double> out(std::size_t(h) * w);
    for (int i = 0; i < b.half_h; ++i)
        for (int j = 0; j < b.half_w; ++j) {
            const std::size_t k = std::size_t(i) * b.half_w + j;
            const double ll = b.ll[k], lh = b.lh[k], hl = b.hl[k], hh = b.hh[k];
            out[std::size_t(2 * i) * w + 2 * j] = (ll + lh + hl + hh) / 2.0;
            out[std::size_t(2 * i) * w + 2 * j + 1] = (ll - lh + hl - hh) / 2.0;
            out[std::size_t(2 * i + 1) * w + 2 * j] = (ll + lh - hl - hh) / 2.0;
            out[std::size_t(2 * i + 1) * w + 2 * j + 1] = (ll - lh - hl + hh) / 2.0;
        }
    return out;
}

BlockDct::BlockDct(int n) : n_(n), basis_(std::size_t(n) * n) {
    for (int u = 0; u < n; ++u) {
        const double c = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (int x = 0; x < n; ++x)
            basis_[std::size_t(u) * n + x] =
                c * std::cos(std::numbers::pi * (2.0 * x + 1.0) * u / (2.0 * n));
    }
}

void BlockDct::forward(const double* block, double* coeffs) const {
    // C = B * X * B^T
    std::vector<double> tmp(std::size_t(n_) * n_, 0.0);
    for (int u = 0; u < n_; ++u)
        for (int j = 0; j < n_; ++j) {
            double acc = 0.0;
            for (int x = 0; x < n_; ++x) acc += basis_[std::size_t(u) * n_ + x] * block[std::size_t(x) * n_ + j];
            tmp[std::size_t(u) * n_ + j] = acc;
        }
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v) {
            double acc = 0.0;
            for (int j = 0; j < n_; ++j) acc += tmp[std::size_t(u) * n_ + j] * basis_[std::size_t(v) * n_ + j];
            coeffs[std::size_t(u) * n_ + v] = acc;
        }
}

void BlockDct::inverse(const double* coeffs, double* block) const {
    // X = B^T * C * B
    std::vector<double> tmp(std::size_t(n_) * n_, 0.0);
    for (int x = 0; x < n_; ++x)
        for (int v = 0; v < n_; ++v) {
            double acc = 0.0;
            for (int u = 0; u < n_; ++u) acc += basis_[std::size_t(u) * n_ + x] * coeffs[std::size_t(u) * n_ + v];
            tmp[std::size_t(x) * n_ + v] = acc;
        }
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) {
            double acc = 0.0;
            for (int v = 0; v < n_; ++v) acc += tmp[std::size_t(x) * n_ + v] * basis_[std::size_t(v) * n_ + y];
            block[std::size_t(x) * n_ + y] = acc;
        }
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft1_radix2(std::complex<double>* a, int n, bool inverse) {
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void dft1_naive(std::complex<double>* a, int n, bool inverse) {
    std::vector<std::complex<double>> out(std::size_t(n));
    const double sign = inverse ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int t = 0; t < n; ++t) {
            const double ang = sign * 2.0 * std::numbers::pi * k * t / n;
            acc += a[t] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[std::size_t(k)] = acc;
    }
    for (int k = 0; k < n; ++k) a[k] = out[std::size_t(k)];
}

void fft1(std::complex<double>* a, int n, bool inverse) {
    if (is_pow2(n))
        fft1_radix2(a, n, inverse);
    else
        dft1_naive(a, n, inverse);
}

}  // namespace

void fft2(std::vector<std::complex<double>>& data, int h, int w, bool inverse) {
    if (int(data.size()) != h * w) throw std::invalid_argument("fft2: size mismatch");
    // rows
    for (int i = 0; i < h; ++i) fft1(data.data() + std::size_t(i) * w, w, inverse);
    // columns
    std::vector<std::complex<double>> col(std::size_t(h));
    for (int j = 0; j < w; ++j) {
        for (int i = 0; i < h; ++i) col[std::size_t(i)] = data[std::size_t(i) * w + j];
        fft1(col.data(), h, inverse);
        for (int i = 0; i < h; ++i) data[std::size_t(i) * w + j] = col[std::size_t(i)];
    }
    const double norm = 1.0 / std::sqrt(double(h) * double(w));
    for (auto& v : data) v *= norm;
}

}  // namespace raven::wm
