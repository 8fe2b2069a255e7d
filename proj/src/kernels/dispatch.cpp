#include "raven/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace raven::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

std::atomic<const Ops*> g_active{nullptr};

const Ops* resolve(std::string_view name) {
    if (name == "auto") {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_available()) return &avx2_ops();
#endif
        return &scalar_ops();
    }
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2") {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_available()) return &avx2_ops();
#endif
        throw std::invalid_argument("kernels: avx2 backend not available on this CPU");
    }
    throw std::invalid_argument("kernels: unknown backend '" + std::string(name) + "'");
}

const Ops* init_from_env() {
    const char* env = std::getenv("RAVEN_KERNELS");
    return resolve(env ? std::string_view(env) : std::string_view("auto"));
}

}  // namespace

const Ops& ops() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        p = init_from_env();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

void select(std::string_view name) {
    g_active.store(resolve(name), std::memory_order_release);
}

std::string_view active_name() { return ops().name; }

}  // namespace raven::kernels
