#include "raven/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace raven::kernels {
namespace {

void axpby_scalar(float a, const float* x, float b, const float* y, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void scale_bias_scalar(const float* x, float a, float b, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b;
}

void add_scalar(const float* x, const float* y, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void silu_scalar(const float* x, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] / (1.0f + std::exp(-x[i]));
}

double sum_scalar(const float* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sumsq_scalar(const float* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * x[i];
    return acc;
}

double dot_scalar(const float* x, const float* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * y[i];
    return acc;
}

void gemm_nt_scalar(const float* A, const float* B, float* C, int M, int N, int K) {
    for (int i = 0; i < M; ++i) {
        const float* a = A + static_cast<std::size_t>(i) * K;
        for (int j = 0; j < N; ++j) {
            const float* b = B + static_cast<std::size_t>(j) * K;
            float acc = 0.0f;
            for (int k = 0; k < K; ++k) acc += a[k] * b[k];
            C[static_cast<std::size_t>(i) * N + j] = acc;
        }
    }
}

void gemm_nn_scalar(const float* A, const float* B, float* C, int M, int N, int K) {
    for (int i = 0; i < M; ++i) {
        float* c = C + static_cast<std::size_t>(i) * N;
        std::fill(c, c + N, 0.0f);
        const float* a = A + static_cast<std::size_t>(i) * K;
        for (int k = 0; k < K; ++k) {
            const float ak = a[k];
            const float* b = B + static_cast<std::size_t>(k) * N;
            for (int j = 0; j < N; ++j) c[j] += ak * b[j];
        }
    }
}

void softmax_rows_scalar(float* mat, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        float* row = mat + static_cast<std::size_t>(i) * cols;
        float m = row[0];
        for (int j = 1; j < cols; ++j) m = std::max(m, row[j]);
        double denom = 0.0;
        for (int j = 0; j < cols; ++j) {
            row[j] = std::exp(row[j] - m);
            denom += row[j];
        }
        const float inv = static_cast<float>(1.0 / denom);
        for (int j = 0; j < cols; ++j) row[j] *= inv;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        "scalar",
        axpby_scalar,
        scale_bias_scalar,
        add_scalar,
        silu_scalar,
        sum_scalar,
        sumsq_scalar,
        dot_scalar,
        gemm_nt_scalar,
        gemm_nn_scalar,
        softmax_rows_scalar,
    };
    return table;
}

}  // namespace raven::kernels
