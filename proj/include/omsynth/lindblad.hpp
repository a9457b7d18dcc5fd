#pragma once

#include "omsynth/leakage.hpp"
#include "omsynth/pulse.hpp"
#include "omsynth/rk45.hpp"
#include "omsynth/types.hpp"

namespace oms {

struct NoiseParams {
    double gamma_c = 0;  // cavity decay (rad/s)
    double gamma_m = 0;  // mechanical decay (rad/s)
    double nbar_m = 0;   // thermal phonon number

    static NoiseParams from(const SystemParams& p) { return {p.gamma_c, p.gamma_m, p.nbar_m}; }
};

/// Right-hand side of the simplified master equation: three-level drive
/// Hamiltonian plus bare dissipators
///   gc/2 (2 a r a+ - a+a r - r a+a) + gm/2 (2 b r b+ - b+b r - r b+b)
///   + gm nbar (b r b+ + b+ r b - b+b r - r b b+).
MatrixXc lindblad_rhs_simplified(const MatrixXc& rho, const MatrixXc& hamiltonian,
                                 const NoiseParams& noise, const MatrixXc& photon_lowering,
                                 const MatrixXc& phonon_lowering);

/// Same Lindblad structure with the polaron-dressed operators in place of the
/// bare ones.
MatrixXc lindblad_rhs_full(const MatrixXc& rho, const MatrixXc& hamiltonian_eff,
                           const NoiseParams& noise, const MatrixXc& a_dressed,
                           const MatrixXc& b_dressed);

enum class LindbladModel { Simplified, Full };

struct ProtocolResult {
    DensityMatrix rho_final;    // composite state in the drive tilde frame
    DensityMatrix rho_phonon;   // reduced phonon state
    double fidelity = 0;        // against the full-system target |psi_t>|g>
    double fidelity_phonon = 0; // Uhlmann fidelity of the reduced state
    double trace_drift = 0;
};

/// Integrate the master equation over a carrier/red(1) schedule from
/// |0,g><0,g| in the common tilde frame (all dissipators are form-invariant
/// there). The simplified model uses the static linearized generators; the
/// full model keeps the complete displacement drive with its explicit
/// oscillations and the dressed dissipators.
ProtocolResult run_protocol(const PulseSchedule& schedule, const NoiseParams& noise,
                            LindbladModel model, const IntegratorOptions& opt = {});

/// Uhlmann fidelity [Tr sqrt(sqrt(rho_r) rho_t sqrt(rho_r))]^2 via Hermitian
/// eigendecomposition; negative eigenvalues are clipped at -1e-8 and the
/// trace renormalized.
double uhlmann_fidelity(const DensityMatrix& rho_target, const DensityMatrix& rho_reduced);

}  // namespace oms
