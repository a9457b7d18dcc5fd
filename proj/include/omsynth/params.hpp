#pragma once

#include <string>
#include <vector>

#include "omsynth/types.hpp"

namespace oms {

/// Physical rates of one experimental configuration, all angular (rad/s).
/// Derived quantities (eta, shifted cavity frequency, anharmonicity) are
/// always recomputed from the stored fields.
struct SystemParams {
    double omega_c = 0;   // bare cavity frequency
    double omega_m = 0;   // mechanical frequency
    double g = 0;         // single-photon optomechanical coupling
    double gamma_c = 0;   // cavity decay rate
    double gamma_m = 0;   // mechanical decay rate
    double Omega = 0;     // drive coupling strength
    double nbar_m = 0;    // thermal phonon number
    double phi_d = 0;     // drive phase offset (radians)

    double eta() const { return g / omega_m; }
    double omega_shifted() const { return omega_c - g * g / omega_m; }
    double delta() const { return -2.0 * g * g / omega_m; }

    void validate() const;

    /// Construct from cyclic frequencies (Hz) as configs and the presets
    /// print them.
    static SystemParams from_hz(double omega_c_hz, double omega_m_hz, double g_hz,
                                double gamma_c_hz, double gamma_m_hz, double drive_hz,
                                double nbar_m = 0, double phi_d = 0);

    /// Synthetic parameter set in reduced units: Omega = 1 rad/s, given
    /// Lamb-Dicke parameter and |delta|/Omega ratio. Used by sweeps.
    static SystemParams reduced(double eta, double delta_over_omega,
                                double gamma_c_over_omega = 0, double gamma_m_over_omega = 0,
                                double nbar_m = 0);
};

/// One preset row: cyclic frequencies in Hz plus the reference fidelities.
struct TableOneRow {
    std::string label;
    double omega_c_hz = 0;
    double gamma_c_hz = 0;
    double omega_m_hz = 0;
    double gamma_m_hz = 0;
    double g_hz = 0;
    double drive_hz = 0;
    double expected_F1 = 0;
    double expected_F2 = 0;

    SystemParams params() const;
};

/// The three preset configurations with projected experimental parameters.
std::vector<TableOneRow> table1_presets();

}  // namespace oms
