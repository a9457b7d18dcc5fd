#pragma once

#include <utility>

#include "omsynth/pulse.hpp"
#include "omsynth/rk45.hpp"
#include "omsynth/types.hpp"

namespace oms {

/// Sideband coupling matrix elements of the three-level model. LambDicke is
/// the linearized model (constant Omega for the carrier, -eta Omega sqrt(m+1)
/// for the first red sideband); Exact uses the full sideband Rabi
/// frequencies, which makes the two-level restriction agree with the
/// closed-form propagators to integrator precision.
enum class SidebandCoupling { LambDicke, Exact };

/// Static tilde-frame generator of a carrier segment on SpaceShape(3, cutoff):
/// per phonon m, couplings Omega (g<->e) and sqrt(2) Omega (e<->e'), detuning
/// delta on e'. The drive phase enters as Omega -> Omega e^{-i phi} on the
/// photon-raising entries.
MatrixXc carrier_generator(double Omega, double delta, double phase, int cutoff,
                           SidebandCoupling coupling = SidebandCoupling::LambDicke, double eta = 0.0);

/// Static tilde-frame generator of a first-order red-sideband segment:
/// couplings -eta Omega sqrt(m+1) on (m+1,g)<->(m,e) and
/// -sqrt(2) eta Omega sqrt(m+1) on (m+1,e)<->(m,e'), detuning delta on e'.
/// |0,g> is exactly decoupled.
MatrixXc red_generator(double Omega, double eta, double delta, double phase, int cutoff,
                       SidebandCoupling coupling = SidebandCoupling::LambDicke);

/// Advance three-level tilde amplitudes through a carrier / red drive window.
Ket carrier_ode_step(const Ket& state, double Omega, double delta, double phase, double dt,
                     const IntegratorOptions& opt = {});
Ket red_ode_step(const Ket& state, double Omega, double eta, double delta, double phase, double dt,
                 const IntegratorOptions& opt = {});

/// Closed-form solution of the generic three-level block
///   i d/dt (cG, cE, cE') = [[0, A, 0], [A, 0, B], [0, B, delta]] (cG, cE, cE')
/// in the dispersive regime |delta| >> |A|, |B|, for the system starting in
/// the ground or in the excited state.
struct ThreeLevelAmplitudes {
    Complex g, e, ep;
    bool asymptotic_ok;  // false when |delta| < 5 max(|A|, |B|)
};
enum class BlockInitial { Ground, Excited };
ThreeLevelAmplitudes analytic_three_level(double A, double B, double delta, double t, BlockInitial initial);
double rabi_dispersive(double A, double B, double delta);  // Omega_R of the block

/// Exact solution of the 2x2 block i d/dt (cS, cX) = [[0, A], [A, B]] (cS, cX).
std::pair<Complex, Complex> two_level_block(double A, double B, double t, Complex s0, Complex x0);

/// Closed-form leakage-loss factors of the carrier excitation (f_ce), the
/// sqrt(2)-red-sideband transfer (f_rg) and the carrier de-excitation (f_cg).
struct LeakageFactors {
    double f_ce, f_rg, f_cg;
};
LeakageFactors leakage_factors(double Omega, double eta, double delta);

/// Fidelity of preparing |e> with a resonant carrier half-pulse (three-level
/// model), |f_ce|^2.
double carrier_fidelity(double Omega, double delta);

/// Leakage-limited protocol fidelities: F1 ~ |f_rg f_ce^2|^2 for |2>,
/// F2 ~ |f_cg f_ce + f_rg f_ce^2|^2 / 4 for (|0> - |2>)/sqrt(2).
double fidelity_F1_analytic(double Omega, double eta, double delta);
double fidelity_F2_analytic(double Omega, double eta, double delta);

/// Integrate a carrier/red(1) schedule through the three-level model from
/// |0,g>, in the common tilde frame. Rejects blue or higher-order segments.
Ket evolve_schedule_three_level(const PulseSchedule& schedule, int cutoff,
                                SidebandCoupling coupling = SidebandCoupling::LambDicke,
                                const IntegratorOptions& opt = {});

enum class ProtocolTarget { Fock2, Superposition02 };

/// The four-segment carrier/red schedule for the two reference targets.
/// Fock2 uses the textbook durations pi/(2 Omega), pi/(2 eta Omega),
/// pi/(2 Omega), pi/(2 sqrt(2) eta Omega); Superposition02 durations and
/// phases are solved by reverse synthesis.
PulseSchedule four_step_protocol(ProtocolTarget target, const SystemParams& params);

/// Squared overlap with the target (x) photon ground state after running the
/// four-step protocol through the three-level model.
double protocol_fidelity_numeric(ProtocolTarget target, double Omega, double eta, double delta);

}  // namespace oms
