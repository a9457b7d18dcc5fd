#include "omsynth/propagators.hpp"

#include <cmath>
#include <stdexcept>

#include "omsynth/errors.hpp"
#include "omsynth/rabi.hpp"

namespace oms {

namespace {
constexpr Complex kI{0.0, 1.0};
}

MatrixXc carrier_propagator(const SystemParams& params, double t, double phase, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("carrier_propagator: cutoff must be >= 2");
    const SpaceShape shape(2, cutoff);
    MatrixXc U = MatrixXc::Zero(shape.dim(), shape.dim());
    const double eta = params.eta();
    for (int n = 0; n < shape.phonon_cutoff; ++n) {
        const double th = rabi_frequency(params.Omega, eta, n, 0) * t;
        const int g = shape.index(0, n), e = shape.index(1, n);
        const double c = std::cos(th), s = std::sin(th);
        U(g, g) = c;
        U(e, e) = c;
        U(e, g) = -kI * std::exp(-kI * phase) * s;
        U(g, e) = -kI * std::exp(kI * phase) * s;
    }
    return U;
}

MatrixXc red_propagator(const SystemParams& params, int k, double t, double phase, int cutoff) {
    if (k < 1) throw std::invalid_argument("red_propagator: sideband order must be >= 1");
    if (cutoff < k + 1) throw std::invalid_argument("red_propagator: cutoff must be >= k + 1");
    const SpaceShape shape(2, cutoff);
    MatrixXc U = MatrixXc::Identity(shape.dim(), shape.dim());
    const double eta = params.eta();
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
    for (int n = 0; n + k < cutoff; ++n) {
        const double th = rabi_frequency(params.Omega, eta, n, k) * t;
        const int e = shape.index(1, n), g2 = shape.index(0, n + k);
        const double c = std::cos(th), s = std::sin(th);
        U(e, e) = c;
        U(g2, g2) = c;
        U(g2, e) = -kI * sign * std::exp(kI * phase) * s;
        U(e, g2) = -kI * sign * std::exp(-kI * phase) * s;
    }
    return U;
}

MatrixXc blue_propagator(const SystemParams& params, int k, double t, double phase, int cutoff) {
    if (k < 1) throw std::invalid_argument("blue_propagator: sideband order must be >= 1");
    if (cutoff < k + 1) throw std::invalid_argument("blue_propagator: cutoff must be >= k + 1");
    const SpaceShape shape(2, cutoff);
    MatrixXc U = MatrixXc::Identity(shape.dim(), shape.dim());
    const double eta = params.eta();
    for (int n = 0; n + k < cutoff; ++n) {
        const double th = rabi_frequency(params.Omega, eta, n, k) * t;
        const int g = shape.index(0, n), e2 = shape.index(1, n + k);
        const double c = std::cos(th), s = std::sin(th);
        U(g, g) = c;
        U(e2, e2) = c;
        U(e2, g) = -kI * std::exp(-kI * phase) * s;
        U(g, e2) = -kI * std::exp(kI * phase) * s;
    }
    return U;
}

MatrixXc segment_propagator(const SystemParams& params, const PulseSegment& seg, int cutoff) {
    switch (seg.kind) {
        case SegmentKind::Carrier:
            return carrier_propagator(params, seg.duration, seg.phase, cutoff);
        case SegmentKind::Red:
            return red_propagator(params, seg.sideband, seg.duration, seg.phase, cutoff);
        case SegmentKind::Blue:
            return blue_propagator(params, seg.sideband, seg.duration, seg.phase, cutoff);
    }
    throw std::logic_error("segment_propagator: bad kind");
}

Ket apply_schedule(const PulseSchedule& schedule, const Ket& initial) {
    if (initial.shape.photon_levels != 2)
        throw std::invalid_argument("apply_schedule: expects the two-level photon space");
    if (initial.norm_error() > 1e-9)
        throw std::invalid_argument("apply_schedule: initial ket not normalized");
    Ket psi = initial;
    for (const auto& seg : schedule.segments) {
        if (seg.duration == 0) continue;
        psi.amplitudes = segment_propagator(schedule.params, seg, psi.shape.phonon_cutoff) * psi.amplitudes;
    }
    if (psi.norm_error() > 1e-12)
        throw IntegrationError("apply_schedule: norm drifted beyond 1e-12");
    return psi;
}

}  // namespace oms
