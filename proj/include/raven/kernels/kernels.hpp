#pragma once

#include <cstddef>
#include <string_view>

// Arithmetic inner loops used by the image/latent pipelines. Every entry has
// a scalar reference implementation; on x86 an AVX2+FMA variant is selected
// at runtime (override with select() or the RAVEN_KERNELS env var).
// Vector variants may reassociate reductions, so results agree with the
// scalar table to rounding, not bit-for-bit.

namespace raven::kernels {

struct Ops {
    const char* name;

    // out[i] = a*x[i] + b*y[i]
    void (*axpby)(float a, const float* x, float b, const float* y, float* out, std::size_t n);
    // out[i] = a*x[i] + b
    void (*scale_bias)(const float* x, float a, float b, float* out, std::size_t n);
    // out[i] = x[i] + y[i]
    void (*add)(const float* x, const float* y, float* out, std::size_t n);
    // out[i] = x[i] * sigmoid(x[i])
    void (*silu)(const float* x, float* out, std::size_t n);

    // reductions, double accumulators
    double (*sum)(const float* x, std::size_t n);
    double (*sumsq)(const float* x, std::size_t n);
    double (*dot)(const float* x, const float* y, std::size_t n);

    // row-major matmuls
    // C[M,N] = A[M,K] * B[N,K]^T
    void (*gemm_nt)(const float* A, const float* B, float* C, int M, int N, int K);
    // C[M,N] = A[M,K] * B[K,N]
    void (*gemm_nn)(const float* A, const float* B, float* C, int M, int N, int K);

    // in-place row-wise softmax with max subtraction
    void (*softmax_rows)(float* mat, int rows, int cols);
};

// Active dispatch table. First call resolves "auto" (env RAVEN_KERNELS wins).
const Ops& ops();

const Ops& scalar_ops();
bool avx2_available();

// name: "auto", "scalar" or "avx2"; throws std::invalid_argument on unknown
// or unavailable backends.
void select(std::string_view name);
std::string_view active_name();

}  // namespace raven::kernels
