#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "omsynth/errors.hpp"

namespace oms {

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Embedded Dormand-Prince 5(4) pair with standard step control. State is any
/// Eigen dense type (state vectors or vectorized density matrices); Rhs is
/// rhs(t, y, dydt). The optional post hook runs after each accepted step
/// (used to re-symmetrize density matrices).
template <typename State, typename Rhs, typename Post>
void integrate_adaptive(Rhs&& rhs, State& y, double t0, double t1, const IntegratorOptions& opt,
                        Post&& post) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat (5th order minus embedded 4th order)
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    const double span = t1 - t0;
    if (span <= 0) return;
    double t = t0;
    double h = std::min(opt.max_step, span);

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, tmp = y;
    rhs(t, y, k1);  // FSAL: stays valid across rejected steps

    int rejected_in_row = 0;
    while (t < t1) {
        h = std::min(h, t1 - t);
        if (!(h > 0) || t + h == t)
            throw IntegrationError("integrate_adaptive: step size underflow");

        tmp = y + h * (a21 * k1);
        rhs(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, tmp, k6);
        tmp = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, tmp, k7);

        const auto err = (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();
        const auto scale =
            (opt.atol + opt.rtol * y.array().abs().max(tmp.array().abs())).eval();
        const double err_norm =
            std::sqrt((err.array().abs() / scale).square().sum() / static_cast<double>(err.size()));

        if (err_norm <= 1.0) {
            t += h;
            y.swap(tmp);
            k1.swap(k7);
            post(y, t);
            rejected_in_row = 0;
        } else if (++rejected_in_row > 60) {
            throw IntegrationError("integrate_adaptive: repeated step rejection");
        }
        const double factor = (err_norm > 0)
                                  ? std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0)
                                  : 5.0;
        h = std::min(h * factor, opt.max_step);
    }
}

template <typename State, typename Rhs>
void integrate_adaptive(Rhs&& rhs, State& y, double t0, double t1, const IntegratorOptions& opt) {
    integrate_adaptive(rhs, y, t0, t1, opt, [](State&, double) {});
}

}  // namespace oms
