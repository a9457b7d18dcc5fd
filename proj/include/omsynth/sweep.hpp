#pragma once

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "omsynth/params.hpp"
#include "omsynth/target_state.hpp"

namespace oms {

/// Run fn(i) for i in [0, n) on up to `jobs` threads. Sweep points are
/// independent by construction; the first exception is rethrown after all
/// workers join.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, int points);
std::vector<double> logspace(double lo, double hi, int points);

/// Closed-system anharmonicity sweep (numeric three-level runs on synthesized
/// schedules vs the analytic leakage formulas) for the |2> and
/// (|0> - |2>)/sqrt(2) targets.
struct DeltaSweepRow {
    double delta_over_omega = 0;
    double f1_numeric = 0, f1_analytic = 0, f2_numeric = 0, f2_analytic = 0;
    std::string error;  // empty on success
};
std::vector<DeltaSweepRow> sweep_delta(double eta, const std::vector<double>& axis, int jobs);

/// Open-system decay sweep at fixed |delta|/Omega, one fidelity column per
/// thermal occupation.
struct GammaSweepRow {
    double gamma_c_over_omega = 0;
    std::vector<double> fidelities;  // one per nbar value
    std::string error;
};
std::vector<GammaSweepRow> sweep_gamma(const TargetState& target, double eta,
                                       double delta_over_omega, double gamma_m_ratio,
                                       const std::vector<double>& nbars,
                                       const std::vector<double>& axis, int jobs);

/// Full pipeline over the preset rows: synthesize both reference targets and
/// integrate the simplified master equation at nbar = 0.
struct Table1Result {
    TableOneRow row;
    double F1 = 0, F2 = 0;
    double seconds = 0;
    bool pass_F1 = false, pass_F2 = false;
};
inline constexpr double kTable1Tolerance = 0.02;
std::vector<Table1Result> run_table1(int jobs);

/// CSV with '#'-prefixed metadata lines, a column-name row, then full
/// double-precision data rows.
void write_delta_csv(std::ostream& os, const std::vector<DeltaSweepRow>& rows,
                     const std::map<std::string, std::string>& metadata);
void write_gamma_csv(std::ostream& os, const std::vector<GammaSweepRow>& rows,
                     const std::vector<double>& nbars,
                     const std::map<std::string, std::string>& metadata);

}  // namespace oms
