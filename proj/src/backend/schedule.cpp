#include "raven/backend/schedule.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "raven/core/sha256.hpp"

namespace raven::backend {

double NoiseSchedule::alpha_bar_at(int t) const {
    if (t == 0) return 1.0;
    if (t < 1 || t > T) throw std::out_of_range("alpha_bar_at: t outside [0,T]");
    return alpha_bar[std::size_t(t - 1)];
}

void NoiseSchedule::validate() const {
    if (T < 1 || int(alpha.size()) != T || int(alpha_bar.size()) != T)
        throw std::runtime_error("NoiseSchedule: inconsistent sizes");
    double prod = 1.0;
    double prev = 1.0 + 1e-15;
    for (int t = 1; t <= T; ++t) {
        const double a = alpha[std::size_t(t - 1)];
        const double ab = alpha_bar[std::size_t(t - 1)];
        if (!(a > 0.0 && a <= 1.0) || !(ab > 0.0 && ab <= 1.0))
            throw std::runtime_error("NoiseSchedule: values must lie in (0,1]");
        if (!(ab < prev)) throw std::runtime_error("NoiseSchedule: alpha_bar not strictly decreasing");
        prod *= a;
        if (std::abs(prod - ab) > 1e-12)
            throw std::runtime_error("NoiseSchedule: alpha_bar inconsistent with alpha at t=" +
                                     std::to_string(t));
        prev = ab;
    }
}

NoiseSchedule linear_beta_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw std::invalid_argument("linear_beta_schedule: T must be >= 1");
    NoiseSchedule s;
    s.T = T;
    s.derivation = NoiseSchedule::Derivation::linear_beta;
    s.alpha.resize(std::size_t(T));
    s.alpha_bar.resize(std::size_t(T));
    double prod = 1.0;
    for (int t = 1; t <= T; ++t) {
        const double beta =
            T == 1 ? beta_start : beta_start + (beta_end - beta_start) * double(t - 1) / double(T - 1);
        s.alpha[std::size_t(t - 1)] = 1.0 - beta;
        prod *= 1.0 - beta;
        s.alpha_bar[std::size_t(t - 1)] = prod;
    }
    s.validate();
    return s;
}

NoiseSchedule cosine_schedule(int T) {
    if (T < 1) throw std::invalid_argument("cosine_schedule: T must be >= 1");
    // Nichol & Dhariwal squared-cosine alpha_bar with the usual 0.008 offset
    auto f = [](double u) {
        const double v = std::cos((u + 0.008) / 1.008 * std::numbers::pi / 2.0);
        return v * v;
    };
    std::vector<double> ab(std::size_t(T));
    const double f0 = f(0.0);
    for (int t = 1; t <= T; ++t) {
        double v = f(double(t) / T) / f0;
        ab[std::size_t(t - 1)] = std::max(v, 1e-8);
    }
    return schedule_from_alpha_bar(std::move(ab), NoiseSchedule::Derivation::cosine);
}

NoiseSchedule schedule_from_alpha_bar(std::vector<double> alpha_bar,
                                      NoiseSchedule::Derivation derivation) {
    NoiseSchedule s;
    s.T = int(alpha_bar.size());
    s.derivation = derivation;
    s.alpha.resize(alpha_bar.size());
    double prev = 1.0;
    for (std::size_t i = 0; i < alpha_bar.size(); ++i) {
        s.alpha[i] = alpha_bar[i] / prev;
        prev = alpha_bar[i];
    }
    s.alpha_bar = std::move(alpha_bar);
    // rebuild the cumulative product so stored values are consistent to
    // round-off with the stored alphas
    double prod = 1.0;
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
        prod *= s.alpha[i];
        s.alpha_bar[i] = prod;
    }
    s.validate();
    return s;
}

std::string schedule_hash(const NoiseSchedule& s) {
    core::Sha256 h;
    h.update(&s.T, sizeof(s.T));
    h.update(s.alpha_bar.data(), s.alpha_bar.size() * sizeof(double));
    auto d = h.finish();
    return core::to_hex(d.data(), d.size());
}

}  // namespace raven::backend
