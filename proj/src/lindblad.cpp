#include "omsynth/lindblad.hpp"

#include <cmath>
#include <cstdio>

#include "omsynth/errors.hpp"
#include "omsynth/fock.hpp"
#include "omsynth/propagators.hpp"
#include "omsynth/rabi.hpp"

namespace oms {

namespace {
constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

namespace {

/// Shared dissipator assembly; `a` and `b` may be bare or dressed.
void add_dissipators(const MatrixXc& rho, const NoiseParams& noise, const MatrixXc& a,
                     const MatrixXc& b, MatrixXc& out) {
    if (noise.gamma_c > 0) {
        const MatrixXc ar = a * rho;
        const MatrixXc na_r = a.adjoint() * ar;           // a+ a rho
        const MatrixXc ar_ad = ar * a.adjoint();          // a rho a+
        out += (noise.gamma_c / 2.0) * (2.0 * ar_ad - na_r - (na_r).adjoint());
    }
    if (noise.gamma_m > 0) {
        const MatrixXc br = b * rho;
        const MatrixXc nb_r = b.adjoint() * br;           // b+ b rho
        const MatrixXc br_bd = br * b.adjoint();          // b rho b+
        out += (noise.gamma_m / 2.0) * (2.0 * br_bd - nb_r - nb_r.adjoint());
        if (noise.nbar_m > 0) {
            // thermal term in the form that stays a Lindblad generator on the
            // truncated space (the printed -b+b rho - rho b b+ grouping
            // assumes b b+ = b+b + 1, which the truncation edge violates)
            const MatrixXc bd_r_b = (b.adjoint() * rho) * b;  // b+ rho b
            const MatrixXc bbd_r = b * (b.adjoint() * rho);   // b b+ rho
            out += (noise.gamma_m * noise.nbar_m) *
                   (br_bd - 0.5 * (nb_r + nb_r.adjoint()) + bd_r_b -
                    0.5 * (bbd_r + bbd_r.adjoint()));
        }
    }
}

}  // namespace

MatrixXc lindblad_rhs_simplified(const MatrixXc& rho, const MatrixXc& hamiltonian,
                                 const NoiseParams& noise, const MatrixXc& photon_lowering,
                                 const MatrixXc& phonon_lowering) {
    MatrixXc out = -kI * (hamiltonian * rho - rho * hamiltonian);
    add_dissipators(rho, noise, photon_lowering, phonon_lowering, out);
    return out;
}

MatrixXc lindblad_rhs_full(const MatrixXc& rho, const MatrixXc& hamiltonian_eff,
                           const NoiseParams& noise, const MatrixXc& a_dressed,
                           const MatrixXc& b_dressed) {
    MatrixXc out = -kI * (hamiltonian_eff * rho - rho * hamiltonian_eff);
    add_dissipators(rho, noise, a_dressed, b_dressed, out);
    return out;
}

namespace {

/// Hermitian square root with negative-eigenvalue clipping.
MatrixXc psd_sqrt(const MatrixXc& m, const char* what) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(m);
    if (es.info() != Eigen::Success) throw IntegrationError(std::string(what) + ": eigensolver failed");
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-8) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s: eigenvalue %.3e below PSD tolerance", what, ev.minCoeff());
        throw IntegrationError(buf);
    }
    Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

void validate_density(const DensityMatrix& rho, const char* what) {
    if (rho.hermiticity_error() > 1e-9)
        throw std::invalid_argument(std::string(what) + ": matrix not Hermitian within tolerance");
    if (rho.trace_error() > 1e-6)
        throw std::invalid_argument(std::string(what) + ": trace differs from 1");
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho_target, const DensityMatrix& rho_reduced) {
    if (rho_target.shape.dim() != rho_reduced.shape.dim())
        throw std::invalid_argument("uhlmann_fidelity: shape mismatch");
    validate_density(rho_target, "uhlmann_fidelity(target)");
    validate_density(rho_reduced, "uhlmann_fidelity(reduced)");
    MatrixXc herm_t = 0.5 * (rho_target.entries + rho_target.entries.adjoint());
    MatrixXc herm_r = 0.5 * (rho_reduced.entries + rho_reduced.entries.adjoint());
    MatrixXc root_r = psd_sqrt(herm_r, "uhlmann_fidelity");
    MatrixXc inner = root_r * herm_t * root_r;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(inner);
    if (es.info() != Eigen::Success) throw IntegrationError("uhlmann_fidelity: eigensolver failed");
    // sqrt amplifies eigensolver noise around zero; clip below the floor
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 64.0 * 1e-16 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    double tr = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > floor) tr += std::sqrt(ev(i));
    double f = tr * tr;
    return std::min(f, 1.0 + 1e-9);
}

namespace {

struct FrameOperators {
    SpaceShape shape;
    MatrixXc a;        // bare three-level photon lowering (composite)
    MatrixXc b;        // bare phonon lowering (composite)
    MatrixXc proj_ep;  // |e'><e'| (x) 1
};

FrameOperators make_operators(int cutoff) {
    FrameOperators ops{SpaceShape(3, cutoff), {}, {}, {}};
    ops.a = lift_photon(photon_lowering<double>(3), ops.shape);
    ops.b = lift_phonon(phonon_lowering<double>(cutoff), ops.shape);
    MatrixXc pe = MatrixXc::Zero(3, 3);
    pe(2, 2) = 1.0;
    ops.proj_ep = lift_photon(pe, ops.shape);
    return ops;
}

double drive_detuning(const PulseSegment& seg, const SystemParams& p) {
    // w - w_d in the common frame: 0 for carrier, +k w_m red, -k w_m blue.
    switch (seg.kind) {
        case SegmentKind::Carrier: return 0.0;
        case SegmentKind::Red: return seg.sideband * p.omega_m;
        case SegmentKind::Blue: return -seg.sideband * p.omega_m;
    }
    return 0.0;
}

}  // namespace

ProtocolResult run_protocol(const PulseSchedule& schedule, const NoiseParams& noise,
                            LindbladModel model, const IntegratorOptions& opt_in) {
    if (!schedule.target)
        throw std::invalid_argument("run_protocol: schedule carries no target state");
    const SystemParams& p = schedule.params;
    const double eta = p.eta();
    const double delta = p.delta();
    const int cutoff = schedule.target->max_index() + kCutoffMargin;
    const FrameOperators ops = make_operators(cutoff);
    const int dim = ops.shape.dim();

    MatrixXc rho = MatrixXc::Zero(dim, dim);
    rho(0, 0) = 1.0;

    // Fastest retained frequency sets the step ceiling.
    const double max_rate = std::max({std::abs(delta), p.Omega, noise.gamma_c,
                                      noise.gamma_m * (noise.nbar_m + 1.0)});
    IntegratorOptions opt = opt_in;
    opt.max_step = std::min(opt.max_step, 0.05 / std::max(max_rate, 1e-300));

    // Full model extras, rebuilt per evaluation: displacement factor and
    // dressed dissipation operators in the rotating phonon frame.
    MatrixXc disp_pos, disp_neg, num_photon;
    if (model == LindbladModel::Full) {
        disp_pos = displacement<double>(eta, cutoff);
        disp_neg = displacement<double>(-eta, cutoff);
        num_photon = ops.a.adjoint() * ops.a;
    }

    auto post = [](MatrixXc& r, double) { r = 0.5 * (r + r.adjoint()).eval(); };

    // Explicit stepping has to resolve every retained oscillation; segments
    // accumulating more phase than this are advanced exactly instead (only
    // possible without dissipation, where the static generator is unitary).
    constexpr double kMaxExplicitRadians = 5e4;
    const bool noiseless = noise.gamma_c == 0 && noise.gamma_m == 0;

    double t_abs = 0;  // protocol time, shared frame across segments
    for (const auto& seg : schedule.segments) {
        if (seg.duration == 0) continue;
        if (model == LindbladModel::Simplified) {
            MatrixXc H;
            switch (seg.kind) {
                case SegmentKind::Carrier:
                    H = carrier_generator(p.Omega, delta, seg.phase + p.phi_d, cutoff);
                    break;
                case SegmentKind::Red:
                    if (seg.sideband != 1)
                        throw std::invalid_argument(
                            "run_protocol: simplified model supports only red(1) and carrier segments");
                    H = red_generator(p.Omega, eta, delta, seg.phase + p.phi_d, cutoff);
                    break;
                case SegmentKind::Blue:
                    throw std::invalid_argument("run_protocol: blue segments are not modeled");
            }
            if (max_rate * seg.duration > kMaxExplicitRadians) {
                if (!noiseless)
                    throw IntegrationError(
                        "run_protocol: |delta| t too large for the explicit integrator with "
                        "dissipation; reduce the detuning ratio or the segment length");
                Eigen::SelfAdjointEigenSolver<MatrixXc> es(H);
                if (es.info() != Eigen::Success)
                    throw IntegrationError("run_protocol: eigensolver failed");
                VectorXc phases =
                    ((-kI * seg.duration) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
                MatrixXc u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
                rho = u * rho * u.adjoint();
                post(rho, t_abs + seg.duration);
            } else {
                auto rhs = [&](double, const MatrixXc& r, MatrixXc& dr) {
                    dr = lindblad_rhs_simplified(r, H, noise, ops.a, ops.b);
                };
                integrate_adaptive(rhs, rho, t_abs, t_abs + seg.duration, opt, post);
            }
        } else {
            const double det = drive_detuning(seg, p);
            const Complex amp = p.Omega * std::exp(-kI * (seg.phase + p.phi_d));
            IntegratorOptions fopt = opt;
            fopt.max_step = std::min(opt.max_step,
                                     0.05 / std::max({std::abs(det), p.omega_m, 1e-300}));
            auto rhs = [&](double t, const MatrixXc& r, MatrixXc& dr) {
                // Phonon rotation R(t) = diag(e^{i m w_m t}).
                VectorXc rot(cutoff);
                for (int m = 0; m < cutoff; ++m) rot(m) = std::exp(kI * (p.omega_m * t * m));
                MatrixXc d_rot = rot.asDiagonal() * disp_pos * rot.conjugate().asDiagonal();
                MatrixXc drive = MatrixXc::Zero(dim, dim);
                const Complex c = amp * std::exp(kI * (det * t));
                // photon-raising blocks (e<-g and e'<-e) carry the phonon displacement
                drive.block(cutoff, 0, cutoff, cutoff) = c * d_rot;
                drive.block(2 * cutoff, cutoff, cutoff, cutoff) = (kSqrt2 * c) * d_rot;
                MatrixXc H = delta * ops.proj_ep + drive + drive.adjoint();
                MatrixXc a_dr = MatrixXc::Zero(dim, dim);
                MatrixXc dm_rot = rot.asDiagonal() * disp_neg * rot.conjugate().asDiagonal();
                a_dr.block(0, cutoff, cutoff, cutoff) = dm_rot;
                a_dr.block(cutoff, 2 * cutoff, cutoff, cutoff) = kSqrt2 * dm_rot;
                MatrixXc b_dr = std::exp(-kI * (p.omega_m * t)) * ops.b - eta * num_photon;
                dr = lindblad_rhs_full(r, H, noise, a_dr, b_dr);
            };
            integrate_adaptive(rhs, rho, t_abs, t_abs + seg.duration, fopt, post);
        }
        t_abs += seg.duration;

        const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        if (drift > 1e-6) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "run_protocol: trace drift %.3e after %.6g s exceeds 1e-6", drift, t_abs);
            throw IntegrationError(buf);
        }
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho);
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw IntegrationError("run_protocol: density matrix lost positivity");
    }

    ProtocolResult result;
    result.rho_final = DensityMatrix(ops.shape, rho);
    result.rho_phonon = partial_trace_photon(result.rho_final);
    result.trace_drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());

    // Fidelity against the whole-system target |psi_t> (x) |g>: for a pure
    // target the Uhlmann fidelity reduces to this quadratic form.
    const VectorXc& c = schedule.target->coefficients;
    VectorXc tvec = VectorXc::Zero(dim);
    for (Eigen::Index k = 0; k < c.size() && k < cutoff; ++k) tvec(k) = c(k);
    result.fidelity = std::real(tvec.dot(rho * tvec));

    // Reduced-state Uhlmann fidelity against the phonon target.
    VectorXc tph = VectorXc::Zero(cutoff);
    for (Eigen::Index k = 0; k < c.size() && k < cutoff; ++k) tph(k) = c(k);
    DensityMatrix rho_t(SpaceShape::phonon_only(cutoff), tph * tph.adjoint());
    result.fidelity_phonon = uhlmann_fidelity(rho_t, result.rho_phonon);
    return result;
}

}  // namespace oms
