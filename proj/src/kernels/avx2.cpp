#include "raven/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace raven::kernels {
namespace {

inline float hsum256(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    lo = _mm_add_ps(lo, _mm_movehl_ps(lo, lo));
    lo = _mm_add_ss(lo, _mm_shuffle_ps(lo, lo, 1));
    return _mm_cvtss_f32(lo);
}

inline double hsum256d(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// Cephes-style single precision exp, ~1 ulp over the clamped range.
inline __m256 exp256_ps(__m256 x) {
    x = _mm256_min_ps(x, _mm256_set1_ps(88.3762626647949f));
    x = _mm256_max_ps(x, _mm256_set1_ps(-88.3762626647949f));

    __m256 fx = _mm256_fmadd_ps(x, _mm256_set1_ps(1.44269504088896341f), _mm256_set1_ps(0.5f));
    fx = _mm256_floor_ps(fx);
    x = _mm256_fnmadd_ps(fx, _mm256_set1_ps(0.693359375f), x);
    x = _mm256_fnmadd_ps(fx, _mm256_set1_ps(-2.12194440e-4f), x);

    __m256 z = _mm256_mul_ps(x, x);
    __m256 y = _mm256_set1_ps(1.9875691500e-4f);
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.3981999507e-3f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(8.3334519073e-3f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(4.1665795894e-2f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.6666665459e-1f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(5.0000001201e-1f));
    y = _mm256_fmadd_ps(y, z, x);
    y = _mm256_add_ps(y, _mm256_set1_ps(1.0f));

    __m256i emm0 = _mm256_cvttps_epi32(fx);
    emm0 = _mm256_add_epi32(emm0, _mm256_set1_epi32(0x7f));
    emm0 = _mm256_slli_epi32(emm0, 23);
    return _mm256_mul_ps(y, _mm256_castsi256_ps(emm0));
}

void axpby_avx2(float a, const float* x, float b, const float* y, float* out, std::size_t n) {
    const __m256 va = _mm256_set1_ps(a), vb = _mm256_set1_ps(b);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 r = _mm256_mul_ps(va, _mm256_loadu_ps(x + i));
        r = _mm256_fmadd_ps(vb, _mm256_loadu_ps(y + i), r);
        _mm256_storeu_ps(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_bias_avx2(const float* x, float a, float b, float* out, std::size_t n) {
    const __m256 va = _mm256_set1_ps(a), vb = _mm256_set1_ps(b);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), vb));
    for (; i < n; ++i) out[i] = a * x[i] + b;
}

void add_avx2(const float* x, const float* y, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_add_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
    for (; i < n; ++i) out[i] = x[i] + y[i];
}

void silu_avx2(const float* x, float* out, std::size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256 e = exp256_ps(_mm256_sub_ps(_mm256_setzero_ps(), v));
        _mm256_storeu_ps(out + i, _mm256_div_ps(v, _mm256_add_ps(one, e)));
    }
    for (; i < n; ++i) out[i] = x[i] / (1.0f + std::exp(-x[i]));
}

double sum_avx2(const float* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
        acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
    }
    double acc = hsum256d(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double sumsq_avx2(const float* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
        __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
        acc0 = _mm256_fmadd_pd(lo, lo, acc0);
        acc1 = _mm256_fmadd_pd(hi, hi, acc1);
    }
    double acc = hsum256d(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += static_cast<double>(x[i]) * x[i];
    return acc;
}

double dot_avx2(const float* x, const float* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vx = _mm256_loadu_ps(x + i);
        __m256 vy = _mm256_loadu_ps(y + i);
        acc0 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(vx)),
                               _mm256_cvtps_pd(_mm256_castps256_ps128(vy)), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(vx, 1)),
                               _mm256_cvtps_pd(_mm256_extractf128_ps(vy, 1)), acc1);
    }
    double acc = hsum256d(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += static_cast<double>(x[i]) * y[i];
    return acc;
}

void gemm_nt_avx2(const float* A, const float* B, float* C, int M, int N, int K) {
    for (int i = 0; i < M; ++i) {
        const float* a = A + static_cast<std::size_t>(i) * K;
        float* c = C + static_cast<std::size_t>(i) * N;
        int j = 0;
        for (; j + 2 <= N; j += 2) {
            const float* b0 = B + static_cast<std::size_t>(j) * K;
            const float* b1 = b0 + K;
            __m256 acc0 = _mm256_setzero_ps(), acc1 = _mm256_setzero_ps();
            int k = 0;
            for (; k + 8 <= K; k += 8) {
                __m256 va = _mm256_loadu_ps(a + k);
                acc0 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b0 + k), acc0);
                acc1 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b1 + k), acc1);
            }
            float s0 = hsum256(acc0), s1 = hsum256(acc1);
            for (; k < K; ++k) {
                s0 += a[k] * b0[k];
                s1 += a[k] * b1[k];
            }
            c[j] = s0;
            c[j + 1] = s1;
        }
        for (; j < N; ++j) {
            const float* b = B + static_cast<std::size_t>(j) * K;
            __m256 acc = _mm256_setzero_ps();
            int k = 0;
            for (; k + 8 <= K; k += 8)
                acc = _mm256_fmadd_ps(_mm256_loadu_ps(a + k), _mm256_loadu_ps(b + k), acc);
            float s = hsum256(acc);
            for (; k < K; ++k) s += a[k] * b[k];
            c[j] = s;
        }
    }
}

void gemm_nn_avx2(const float* A, const float* B, float* C, int M, int N, int K) {
    for (int i = 0; i < M; ++i) {
        float* c = C + static_cast<std::size_t>(i) * N;
        std::fill(c, c + N, 0.0f);
        const float* a = A + static_cast<std::size_t>(i) * K;
        for (int k = 0; k < K; ++k) {
            const __m256 ak = _mm256_set1_ps(a[k]);
            const float* b = B + static_cast<std::size_t>(k) * N;
            int j = 0;
            for (; j + 8 <= N; j += 8)
                _mm256_storeu_ps(c + j, _mm256_fmadd_ps(ak, _mm256_loadu_ps(b + j), _mm256_loadu_ps(c + j)));
            for (; j < N; ++j) c[j] += a[k] * b[j];
        }
    }
}

void softmax_rows_avx2(float* mat, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        float* row = mat + static_cast<std::size_t>(i) * cols;
        __m256 vmax = _mm256_set1_ps(-std::numeric_limits<float>::infinity());
        int j = 0;
        for (; j + 8 <= cols; j += 8) vmax = _mm256_max_ps(vmax, _mm256_loadu_ps(row + j));
        float m = -std::numeric_limits<float>::infinity();
        alignas(32) float tmp[8];
        _mm256_store_ps(tmp, vmax);
        for (float t : tmp) m = std::max(m, t);
        for (; j < cols; ++j) m = std::max(m, row[j]);

        const __m256 vm = _mm256_set1_ps(m);
        __m256d dsum0 = _mm256_setzero_pd(), dsum1 = _mm256_setzero_pd();
        j = 0;
        for (; j + 8 <= cols; j += 8) {
            __m256 e = exp256_ps(_mm256_sub_ps(_mm256_loadu_ps(row + j), vm));
            _mm256_storeu_ps(row + j, e);
            dsum0 = _mm256_add_pd(dsum0, _mm256_cvtps_pd(_mm256_castps256_ps128(e)));
            dsum1 = _mm256_add_pd(dsum1, _mm256_cvtps_pd(_mm256_extractf128_ps(e, 1)));
        }
        double denom = hsum256d(_mm256_add_pd(dsum0, dsum1));
        for (; j < cols; ++j) {
            row[j] = std::exp(row[j] - m);
            denom += row[j];
        }
        const __m256 inv = _mm256_set1_ps(static_cast<float>(1.0 / denom));
        j = 0;
        for (; j + 8 <= cols; j += 8)
            _mm256_storeu_ps(row + j, _mm256_mul_ps(_mm256_loadu_ps(row + j), inv));
        for (; j < cols; ++j) row[j] *= static_cast<float>(1.0 / denom);
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops table{
        "avx2",
        axpby_avx2,
        scale_bias_avx2,
        add_avx2,
        silu_avx2,
        sum_avx2,
        sumsq_avx2,
        dot_avx2,
        gemm_nt_avx2,
        gemm_nn_avx2,
        softmax_rows_avx2,
    };
    return table;
}

}  // namespace raven::kernels

#endif  // x86_64
