#pragma once

#include <string>
#include <vector>

namespace raven::backend {

// Cumulative noise schedule: alpha_bar[t-1] holds the product of alpha over
// steps 1..t. alpha_bar_at(0) == 1 by convention.
struct NoiseSchedule {
    enum class Derivation { linear_beta, cosine, backend_native };

    int T = 0;
    std::vector<double> alpha;      // per-step alpha_t, t = 1..T
    std::vector<double> alpha_bar;  // cumulative products
    Derivation derivation = Derivation::linear_beta;

    double alpha_bar_at(int t) const;

    // strictly decreasing, values in (0,1], cumulative consistency to 1e-12
    void validate() const;
};

NoiseSchedule linear_beta_schedule(int T, double beta_start, double beta_end);
NoiseSchedule cosine_schedule(int T);
NoiseSchedule schedule_from_alpha_bar(std::vector<double> alpha_bar,
                                      NoiseSchedule::Derivation derivation);

std::string schedule_hash(const NoiseSchedule& s);

}  // namespace raven::backend
