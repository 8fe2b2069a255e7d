#pragma once

#include <complex>
#include <vector>

namespace raven::wm {

// One-level orthonormal Haar DWT of an h x w grid (even dims). Band layout:
// each band is (h/2) x (w/2), row-major.
struct HaarBands {
    int half_h = 0, half_w = 0;
    std::vector<double> ll, lh, hl, hh;
};

HaarBands haar_forward(const std::vector<double>& src, int h, int w);
std::vector<double> haar_inverse(const HaarBands& bands);

// Orthonormal 2-D DCT-II on n x n blocks via precomputed basis.
class BlockDct {
public:
    explicit BlockDct(int n);
    void forward(const double* block, double* coeffs) const;
    void inverse(const double* coeffs, double* block) const;
    int n() const { return n_; }

private:
    int n_;
    std::vector<double> basis_;  // basis_[u*n + x] = c(u) cos(pi (2x+1) u / 2n)
};

// In-place 2-D FFT with unitary normalization (1/sqrt(N) per direction).
// Radix-2 rows/cols; non-power-of-two sizes fall back to a direct DFT.
void fft2(std::vector<std::complex<double>>& data, int h, int w, bool inverse);

}  // namespace raven::wm
