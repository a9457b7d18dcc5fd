#include "omsynth/synthesis.hpp"

#include <cmath>
#include <cstdio>

#include "omsynth/errors.hpp"
#include "omsynth/propagators.hpp"
#include "omsynth/rabi.hpp"

namespace oms {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kAmpEps = 1e-14;

struct Rotation {
    double t;
    double phase;
};

/// Smallest non-negative duration and phase solving tan(W t) = e^{s i phase} zeta
/// with zeta = num/den, where s = -1 for the red condition and +1 for the
/// carrier condition. A negative Rabi frequency is absorbed as a pi phase
/// shift; a vanishing denominator forces the quarter-period transfer; both
/// amplitudes vanishing yields a zero-length segment.
Rotation solve_elimination(Complex num, Complex den, double W, int phase_sign) {
    if (std::abs(num) < kAmpEps && std::abs(den) < kAmpEps) return {0.0, 0.0};
    if (std::abs(W) < 1e-300) throw SynthesisError("degenerate Rabi frequency in elimination step");
    if (std::abs(den) < kAmpEps) return {kPi / (2.0 * std::abs(W)), 0.0};
    const Complex zeta = num / den;
    double phase = -phase_sign * std::arg(zeta);
    double theta = std::atan(std::abs(zeta));
    if (W < 0) phase += kPi;
    return {theta / std::abs(W), wrap_phase(phase)};
}

}  // namespace

PulseSchedule forward_synthesize(const TargetState& target, const SystemParams& params) {
    params.validate();
    const int N = target.max_index();
    PulseSchedule schedule;
    schedule.params = params;
    schedule.target = target;
    if (N == 0) return schedule;  // |0> needs no drive

    const double eta = params.eta();
    const VectorXc& c = target.coefficients;

    // Carrier: c_0 = cos(W_00 t), real >= 0 after canonicalization.
    const double W00 = rabi_frequency(params.Omega, eta, 0, 0);
    const double c0 = std::min(1.0, std::abs(c(0)));
    const double theta_c = std::acos(c0);
    schedule.segments.push_back(PulseSegment::carrier(theta_c / W00, 0.0));

    double residual = std::sin(theta_c);  // amplitude still parked on |0,e>
    for (int k = 1; k <= N; ++k) {
        const double Wk = rabi_frequency(params.Omega, eta, 0, k);
        if (std::abs(Wk) < 1e-15 * params.Omega) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "vanishing Rabi frequency for sideband order %d (eta = %g)", k, eta);
            throw SynthesisError(buf);
        }
        const double mag = (k < static_cast<int>(c.size())) ? std::abs(c(k)) : 0.0;
        double theta;
        if (k < N) {
            const double s = (residual > kAmpEps) ? mag / residual : 0.0;
            if (s > 1.0 + 1e-9) throw SynthesisError("infeasible target: sideband amplitude exceeds residual");
            theta = std::asin(std::min(s, 1.0));
            residual *= std::cos(theta);
        } else {
            theta = kPi / 2.0;
            if (std::abs(residual - mag) > 1e-9)
                throw SynthesisError("forward synthesis residual mismatch (internal)");
        }
        double phase = std::arg(c(k)) - kPi * ((k - 1) % 2);
        if (Wk < 0) phase += kPi;
        schedule.segments.push_back(PulseSegment::red(k, theta / std::abs(Wk), wrap_phase(phase)));
    }
    return schedule;
}

PulseSchedule reverse_synthesize(const TargetState& target, const SystemParams& params) {
    params.validate();
    const int N = target.max_index();
    PulseSchedule schedule;
    schedule.params = params;
    schedule.target = target;
    if (N == 0) return schedule;

    const double eta = params.eta();
    const int cutoff = N + 1;
    const SpaceShape shape(2, std::max(cutoff, 2));
    VectorXc psi = VectorXc::Zero(shape.dim());
    for (int k = 0; k <= N; ++k)
        if (k < target.coefficients.size()) psi(shape.index(0, k)) = target.coefficients(k);

    std::vector<std::pair<PulseSegment, PulseSegment>> pairs;  // (carrier, red) per step i
    for (int i = N; i >= 1; --i) {
        // Zero <i,g| with an inverse red(1) segment on the (|i-1,e>, |i,g>)
        // pair: tan(W t) = e^{-i phi} (-i beta / alpha).
        const Complex alpha = psi(shape.index(1, i - 1));
        const Complex beta = psi(shape.index(0, i));
        const double Wr = rabi_frequency(params.Omega, eta, i - 1, 1);
        const Rotation red = solve_elimination(-kI * beta, alpha, Wr, -1);
        psi = red_propagator(params, 1, red.t, red.phase, shape.phonon_cutoff).adjoint() * psi;

        // Zero <i-1,e| with an inverse carrier segment:
        //   tan(W t) = e^{+i phi} (i nu / mu).
        const Complex mu = psi(shape.index(0, i - 1));
        const Complex nu = psi(shape.index(1, i - 1));
        const double Wc = rabi_frequency(params.Omega, eta, i - 1, 0);
        const Rotation car = solve_elimination(kI * nu, mu, Wc, +1);
        psi = carrier_propagator(params, car.t, car.phase, shape.phonon_cutoff).adjoint() * psi;

        pairs.emplace_back(PulseSegment::carrier(car.t, car.phase), PulseSegment::red(1, red.t, red.phase));
    }

    const double overlap = std::abs(psi(shape.index(0, 0)));
    if (overlap < 1.0 - 1e-9) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "reverse synthesis did not converge: |<0,g|psi>| = %.12g", overlap);
        throw SynthesisError(buf);
    }

    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        schedule.segments.push_back(it->first);
        schedule.segments.push_back(it->second);
    }
    return schedule;
}

double verify_schedule(const PulseSchedule& schedule, const TargetState& target) {
    int need = target.max_index() + 1;
    for (const auto& s : schedule.segments)
        if (s.kind != SegmentKind::Carrier) need = std::max(need, s.sideband + 1);
    const SpaceShape shape(2, need + kCutoffMargin);
    Ket psi = apply_schedule(schedule, Ket::basis(shape, 0, 0));
    return target.overlap_sq(psi.amplitudes.head(shape.phonon_cutoff));
}

}  // namespace oms
