#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omsynth/params.hpp"
#include "omsynth/target_state.hpp"

namespace oms {

/// Flat key-value run configuration with [system], [target], [sweep] and
/// [run] sections. Frequencies are cyclic (Hz), times seconds, angles
/// radians. Numeric fields round-trip bit-exactly through serialize().
struct RunConfig {
    // [system]
    double omega_c_hz = 7.47e9;
    double omega_m_hz = 100e6;
    double g_hz = 10e6;
    double gamma_c_hz = 1e3;
    double gamma_m_hz = 10;
    double drive_hz = 50e3;
    double nbar_m = 0;
    double phi_d_rad = 0;
    std::optional<double> temperature_k;  // when set, nbar_m is derived from it

    // [target]
    std::string target;  // "k:value" list; empty means no target given
    bool auto_normalize = false;

    // [sweep]
    std::string axis = "delta_over_omega";
    double min = 5;
    double max = 100;
    int points = 40;
    std::string scale = "linear";  // or "log"
    double eta = 0.1;
    double delta_over_omega = 10;
    double gamma_m_ratio = 0.1;
    std::vector<double> nbar_list = {0, 1, 5};

    // [run]
    std::string model = "ideal";  // ideal | leakage | lindblad-simplified | lindblad-full
    std::string algorithm = "reverse";
    int jobs = 1;
    std::string out;

    static RunConfig parse(const std::string& text);
    static RunConfig parse_file(const std::string& path);
    std::string serialize() const;

    SystemParams system_params() const;
    TargetState target_state() const;
    std::vector<double> sweep_axis() const;
};

}  // namespace oms
