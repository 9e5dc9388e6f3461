#pragma once

#include <lstar/model/model.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lstar {

struct NonFiniteGradient : std::runtime_error {
    NonFiniteGradient() : std::runtime_error("adam_step: gradient contains non-finite values") {}
};

struct AdamState {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step = 0;
};

// Standard bias-corrected update. Throws before touching params or
// moments when the gradient is non-finite, so the caller can skip the
// offending sample and continue.
inline void adam_step(ModelParams& params, const std::vector<double>& grad, AdamState& state) {
    const std::size_t n = params.theta.size();
    if (grad.size() != n) throw std::invalid_argument("adam_step: gradient size mismatch");
    for (double g : grad)
        if (!std::isfinite(g)) throw NonFiniteGradient();
    if (state.m.empty()) state.m.assign(n, 0.0);
    if (state.v.empty()) state.v.assign(n, 0.0);
    if (state.m.size() != n || state.v.size() != n)
        throw std::invalid_argument("adam_step: moment size mismatch");

    state.step += 1;
    const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
        double mhat = state.m[i] / c1;
        double vhat = state.v[i] / c2;
        params.theta[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

}  // namespace lstar
