#include "omsynth/leakage.hpp"

#include <cmath>
#include <stdexcept>

#include "omsynth/errors.hpp"
#include "omsynth/propagators.hpp"
#include "omsynth/rabi.hpp"
#include "omsynth/synthesis.hpp"

namespace oms {

namespace {
constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

MatrixXc carrier_generator(double Omega, double delta, double phase, int cutoff,
                           SidebandCoupling coupling, double eta) {
    const SpaceShape shape(3, cutoff);
    MatrixXc H = MatrixXc::Zero(shape.dim(), shape.dim());
    const Complex up = std::exp(-kI * phase);
    for (int m = 0; m < cutoff; ++m) {
        const double om =
            (coupling == SidebandCoupling::Exact) ? rabi_frequency(Omega, eta, m, 0) : Omega;
        const int g = shape.index(0, m), e = shape.index(1, m), ep = shape.index(2, m);
        H(e, g) = om * up;
        H(g, e) = std::conj(H(e, g));
        H(ep, e) = kSqrt2 * om * up;
        H(e, ep) = std::conj(H(ep, e));
        H(ep, ep) = delta;
    }
    return H;
}

MatrixXc red_generator(double Omega, double eta, double delta, double phase, int cutoff,
                       SidebandCoupling coupling) {
    const SpaceShape shape(3, cutoff);
    MatrixXc H = MatrixXc::Zero(shape.dim(), shape.dim());
    const Complex up = std::exp(-kI * phase);
    for (int m = 0; m < cutoff; ++m) H(shape.index(2, m), shape.index(2, m)) = delta;
    for (int m = 0; m + 1 < cutoff; ++m) {
        const double om = (coupling == SidebandCoupling::Exact)
                              ? rabi_frequency(Omega, eta, m, 1)
                              : eta * Omega * std::sqrt(double(m + 1));
        const int e = shape.index(1, m), g2 = shape.index(0, m + 1);
        H(e, g2) = -om * up;
        H(g2, e) = std::conj(H(e, g2));
        const int ep = shape.index(2, m), e2 = shape.index(1, m + 1);
        H(ep, e2) = -kSqrt2 * om * up;
        H(e2, ep) = std::conj(H(ep, e2));
    }
    return H;
}

namespace {

/// Advance amplitudes under a static Hermitian generator. Explicit stepping
/// must resolve the fastest phase, so beyond ~5e4 accumulated radians the
/// state is advanced through the exact eigendecomposition of the generator
/// instead; both paths solve the same equation.
constexpr double kMaxExplicitRadians = 5e4;

Ket ode_advance(const Ket& state, const MatrixXc& H, double dt, double fastest,
                const IntegratorOptions& opt_in) {
    VectorXc psi = state.amplitudes;
    if (fastest * dt > kMaxExplicitRadians) {
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(H);
        if (es.info() != Eigen::Success)
            throw IntegrationError("three-level ODE: eigensolver failed");
        VectorXc phases =
            ((-kI * dt) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
        psi = es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * psi);
    } else {
        IntegratorOptions opt = opt_in;
        opt.max_step = std::min(opt.max_step, 0.05 / std::max(fastest, 1e-300));
        integrate_adaptive(
            [&H](double, const VectorXc& y, VectorXc& dy) {
                dy.noalias() = H * y;
                dy *= -kI;
            },
            psi, 0.0, dt, opt);
    }
    Ket out(state.shape, std::move(psi));
    if (out.norm_error() > 1e-9)
        throw IntegrationError("three-level ODE: norm drifted beyond 1e-9");
    return out;
}

}  // namespace

Ket carrier_ode_step(const Ket& state, double Omega, double delta, double phase, double dt,
                     const IntegratorOptions& opt) {
    if (state.shape.photon_levels != 3)
        throw std::invalid_argument("carrier_ode_step: expects the three-level photon space");
    MatrixXc H = carrier_generator(Omega, delta, phase, state.shape.phonon_cutoff);
    return ode_advance(state, H, dt, std::max(std::abs(delta), std::abs(Omega)), opt);
}

Ket red_ode_step(const Ket& state, double Omega, double eta, double delta, double phase, double dt,
                 const IntegratorOptions& opt) {
    if (state.shape.photon_levels != 3)
        throw std::invalid_argument("red_ode_step: expects the three-level photon space");
    MatrixXc H = red_generator(Omega, eta, delta, phase, state.shape.phonon_cutoff);
    return ode_advance(state, H, dt, std::max(std::abs(delta), std::abs(Omega)), opt);
}

double rabi_dispersive(double A, double B, double delta) {
    return 2.0 * std::abs(A) *
           (1.0 - B * B / (2.0 * delta * delta) + std::pow(B, 4) / (8.0 * A * A * delta * delta));
}

ThreeLevelAmplitudes analytic_three_level(double A, double B, double delta, double t,
                                          BlockInitial initial) {
    if (delta == 0) throw std::invalid_argument("analytic_three_level: delta must be nonzero");
    if (A == 0) throw std::invalid_argument("analytic_three_level: A must be nonzero");
    ThreeLevelAmplitudes out{};
    out.asymptotic_ok = std::abs(delta) >= 5.0 * std::max(std::abs(A), std::abs(B));
    const double WR = rabi_dispersive(A, B, delta);
    const double half = 0.5 * WR * t;
    const double sgnA = (A >= 0) ? 1.0 : -1.0;
    const double cs = std::cos(half), sn = std::sin(half);
    if (initial == BlockInitial::Ground) {
        out.g = cs - kI * (B * B / (2.0 * std::abs(A) * delta)) * sn;
        out.e = -kI * sgnA * (1.0 - B * B / (2.0 * delta * delta) - std::pow(B, 4) / (8.0 * A * A * delta * delta)) * sn;
        out.ep = kI * sgnA * (B / delta) * sn;
    } else {
        const double fast = (delta + 3.0 * B * B / (2.0 * delta)) * t;
        out.g = -kI * sgnA * (1.0 - B * B / (delta * delta)) * sn;
        out.e = (1.0 - 3.0 * B * B / (2.0 * delta * delta) + std::pow(B, 4) / (8.0 * A * A * delta * delta)) * cs;
        out.ep = (B / delta) * (std::cos(fast) - cs) - kI * (B / delta) * std::sin(fast);
    }
    return out;
}

std::pair<Complex, Complex> two_level_block(double A, double B, double t, Complex s0, Complex x0) {
    const double WR = std::sqrt(4.0 * A * A + B * B);
    if (WR == 0) return {s0, x0};
    const double half = 0.5 * WR * t;
    const Complex rot = std::exp(-kI * (0.5 * B * t));
    const double cs = std::cos(half), sn = std::sin(half);
    const Complex cS = (s0 * (cs + kI * (B / WR) * sn) - kI * (2.0 * A / WR) * x0 * sn) * rot;
    const Complex cX = (x0 * (cs - kI * (B / WR) * sn) - kI * (2.0 * A / WR) * s0 * sn) * rot;
    return {cS, cX};
}

LeakageFactors leakage_factors(double Omega, double eta, double delta) {
    if (delta == 0) throw std::invalid_argument("leakage_factors: delta must be nonzero");
    const double r = Omega * Omega / (delta * delta);
    const double re = (eta * Omega) * (eta * Omega) / (delta * delta);
    LeakageFactors f{};
    f.f_ce = (1.0 - 1.5 * r) * std::sin(kPi / 2.0 * (1.0 - 0.5 * r));
    f.f_rg = (1.0 - 2.0 * re) * std::sin(kPi / 2.0 * (1.0 - 0.75 * re));
    f.f_cg = (1.0 - 2.0 * r) * std::sin(kPi / 2.0 * (1.0 - 0.5 * r));
    return f;
}

double carrier_fidelity(double Omega, double delta) {
    const double f = leakage_factors(Omega, 0.0, delta).f_ce;
    return f * f;
}

double fidelity_F1_analytic(double Omega, double eta, double delta) {
    const LeakageFactors f = leakage_factors(Omega, eta, delta);
    const double amp = f.f_rg * f.f_ce * f.f_ce;
    return amp * amp;
}

double fidelity_F2_analytic(double Omega, double eta, double delta) {
    const LeakageFactors f = leakage_factors(Omega, eta, delta);
    const double amp = f.f_cg * f.f_ce + f.f_rg * f.f_ce * f.f_ce;
    return 0.25 * amp * amp;
}

Ket evolve_schedule_three_level(const PulseSchedule& schedule, int cutoff, SidebandCoupling coupling,
                                const IntegratorOptions& opt) {
    const SystemParams& p = schedule.params;
    const double delta = p.delta();
    const double eta = p.eta();
    Ket psi = Ket::basis(SpaceShape(3, cutoff), 0, 0);
    for (const auto& seg : schedule.segments) {
        if (seg.duration == 0) continue;
        MatrixXc H;
        switch (seg.kind) {
            case SegmentKind::Carrier:
                H = carrier_generator(p.Omega, delta, seg.phase, cutoff, coupling, eta);
                break;
            case SegmentKind::Red:
                if (seg.sideband != 1)
                    throw std::invalid_argument(
                        "three-level model supports only first-order red sidebands");
                H = red_generator(p.Omega, eta, delta, seg.phase, cutoff, coupling);
                break;
            case SegmentKind::Blue:
                throw std::invalid_argument("three-level model does not support blue sidebands");
        }
        psi = ode_advance(psi, H, seg.duration, std::max(std::abs(delta), p.Omega), opt);
    }
    return psi;
}

PulseSchedule four_step_protocol(ProtocolTarget target, const SystemParams& params) {
    const double Omega = params.Omega;
    const double eta = params.eta();
    if (target == ProtocolTarget::Fock2) {
        PulseSchedule s;
        s.params = params;
        VectorXc c = VectorXc::Zero(3);
        c(2) = 1.0;
        s.target = TargetState::from_coefficients(c);
        s.segments = {
            PulseSegment::carrier(kPi / (2.0 * Omega), 0.0),
            PulseSegment::red(1, kPi / (2.0 * eta * Omega), 0.0),
            PulseSegment::carrier(kPi / (2.0 * Omega), 0.0),
            PulseSegment::red(1, kPi / (2.0 * kSqrt2 * eta * Omega), 0.0),
        };
        return s;
    }
    VectorXc c = VectorXc::Zero(3);
    c(0) = 1.0 / kSqrt2;
    c(2) = -1.0 / kSqrt2;
    return reverse_synthesize(TargetState::from_coefficients(c), params);
}

double protocol_fidelity_numeric(ProtocolTarget target, double Omega, double eta, double delta) {
    if (delta == 0) throw std::invalid_argument("protocol_fidelity_numeric: delta must be nonzero");
    // Mechanical parameters consistent with (Omega, eta, |delta|); the sign
    // of delta is carried literally through the generators.
    SystemParams p;
    p.Omega = Omega;
    p.omega_m = std::abs(delta) / (2.0 * eta * eta);
    p.g = eta * p.omega_m;
    p.omega_c = 10.0 * p.omega_m;
    const PulseSchedule schedule = four_step_protocol(target, p);

    const int cutoff = 2 + kCutoffMargin;
    Ket psi = Ket::basis(SpaceShape(3, cutoff), 0, 0);
    const IntegratorOptions opt;
    for (const auto& seg : schedule.segments) {
        if (seg.duration == 0) continue;
        if (seg.kind == SegmentKind::Carrier)
            psi = carrier_ode_step(psi, Omega, delta, seg.phase, seg.duration, opt);
        else
            psi = red_ode_step(psi, Omega, eta, delta, seg.phase, seg.duration, opt);
    }
    return schedule.target->overlap_sq(psi.amplitudes.head(cutoff));
}

}  // namespace oms
