#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "omsynth/config.hpp"
#include "omsynth/errors.hpp"
#include "omsynth/leakage.hpp"
#include "omsynth/lindblad.hpp"
#include "omsynth/pulse.hpp"
#include "omsynth/sweep.hpp"
#include "omsynth/synthesis.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 2;
constexpr int kExitSynthesis = 3;
constexpr int kExitIntegration = 4;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::map<std::string, std::string> base_metadata(const oms::RunConfig& cfg, const std::string& cmd) {
    std::map<std::string, std::string> meta;
    meta["command"] = cmd;
    meta["version"] = kVersion;
    meta["generated_at"] = timestamp_utc();
    meta["eta"] = std::to_string(cfg.eta);
    meta["points"] = std::to_string(cfg.points);
    meta["scale"] = cfg.scale;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.min);
    meta["min"] = buf;
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.max);
    meta["max"] = buf;
    return meta;
}

void write_csv_or_stdout(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw oms::ConfigError("cannot open output file '" + path + "'");
    writer(out);
    std::cout << "wrote " << path << "\n";
}

const char* kind_label(oms::SegmentKind k) {
    switch (k) {
        case oms::SegmentKind::Carrier: return "carrier";
        case oms::SegmentKind::Red: return "red";
        case oms::SegmentKind::Blue: return "blue";
    }
    return "?";
}

int cmd_synth(const oms::RunConfig& cfg) {
    const oms::SystemParams params = cfg.system_params();
    const oms::TargetState target = cfg.target_state();
    oms::PulseSchedule schedule;
    if (cfg.algorithm == "forward")
        schedule = oms::forward_synthesize(target, params);
    else if (cfg.algorithm == "reverse")
        schedule = oms::reverse_synthesize(target, params);
    else
        throw oms::ConfigError("unknown algorithm '" + cfg.algorithm + "' (forward|reverse)");

    const double fidelity = oms::verify_schedule(schedule, target);
    std::printf("algorithm: %s\n", cfg.algorithm.c_str());
    std::printf("segments:  %zu   total time: %.9g s\n", schedule.segments.size(),
                schedule.total_time());
    std::printf("%-9s %2s %-22s %s\n", "kind", "k", "duration_s", "phase_rad");
    for (const auto& s : schedule.segments)
        std::printf("%-9s %2d %-22.15g %.15g\n", kind_label(s.kind), s.sideband, s.duration, s.phase);
    std::printf("ideal fidelity: %.12f\n", fidelity);
    if (!cfg.out.empty()) {
        oms::write_schedule_file(schedule, cfg.out);
        std::printf("wrote %s\n", cfg.out.c_str());
    }
    return 0;
}

int cmd_simulate(const std::string& schedule_path, const std::string& model, const std::string& out) {
    const oms::PulseSchedule schedule = oms::read_schedule_file(schedule_path);
    double fidelity = 0;
    double trace_drift = 0;
    if (model == "ideal") {
        if (!schedule.target) throw oms::ConfigError("schedule has no target; cannot score");
        fidelity = oms::verify_schedule(schedule, *schedule.target);
    } else if (model == "leakage") {
        if (!schedule.target) throw oms::ConfigError("schedule has no target; cannot score");
        const int cutoff = schedule.target->max_index() + oms::kCutoffMargin;
        oms::Ket psi = oms::evolve_schedule_three_level(schedule, cutoff);
        fidelity = schedule.target->overlap_sq(psi.amplitudes.head(cutoff));
    } else if (model == "lindblad-simplified" || model == "lindblad-full") {
        const auto res = oms::run_protocol(
            schedule, oms::NoiseParams::from(schedule.params),
            model == "lindblad-full" ? oms::LindbladModel::Full : oms::LindbladModel::Simplified);
        fidelity = res.fidelity;
        trace_drift = res.trace_drift;
        std::printf("reduced-state Uhlmann fidelity: %.12f\n", res.fidelity_phonon);
    } else {
        throw oms::ConfigError("unknown model '" + model +
                               "' (ideal|leakage|lindblad-simplified|lindblad-full)");
    }
    std::printf("model: %s\n", model.c_str());
    std::printf("fidelity: %.12f\n", fidelity);
    if (model.rfind("lindblad", 0) == 0) std::printf("trace drift: %.3e\n", trace_drift);
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw oms::ConfigError("cannot open output file '" + out + "'");
        os << "# model = " << model << "\nfidelity," << fidelity << "\n";
    }
    return 0;
}

int cmd_sweep_delta(const oms::RunConfig& cfg) {
    const auto rows = oms::sweep_delta(cfg.eta, cfg.sweep_axis(), cfg.jobs);
    auto meta = base_metadata(cfg, "sweep-delta");
    write_csv_or_stdout(cfg.out, [&](std::ostream& os) { oms::write_delta_csv(os, rows, meta); });
    int failed = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) {
            std::fprintf(stderr, "row |delta|/Omega = %g failed: %s\n", r.delta_over_omega,
                         r.error.c_str());
            ++failed;
        }
    return failed ? kExitIntegration : 0;
}

int cmd_sweep_gamma(const oms::RunConfig& cfg) {
    oms::TargetState target = cfg.target.empty()
                                  ? oms::TargetState::parse("2:1")
                                  : cfg.target_state();
    const auto rows = oms::sweep_gamma(target, cfg.eta, cfg.delta_over_omega, cfg.gamma_m_ratio,
                                       cfg.nbar_list, cfg.sweep_axis(), cfg.jobs);
    auto meta = base_metadata(cfg, "sweep-gamma");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.delta_over_omega);
    meta["delta_over_omega"] = buf;
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.gamma_m_ratio);
    meta["gamma_m_ratio"] = buf;
    meta["target"] = target.serialize();
    write_csv_or_stdout(cfg.out,
                        [&](std::ostream& os) { oms::write_gamma_csv(os, rows, cfg.nbar_list, meta); });
    int failed = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) {
            std::fprintf(stderr, "row gamma_c/Omega = %g failed: %s\n", r.gamma_c_over_omega,
                         r.error.c_str());
            ++failed;
        }
    return failed ? kExitIntegration : 0;
}

int cmd_table1(int jobs) {
    const auto results = oms::run_table1(jobs);
    std::printf("%-24s %9s %9s %6s  %9s %9s %6s  %8s\n", "system", "F1", "expected", "pass",
                "F2", "expected", "pass", "seconds");
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%-24s %9.4f %9.4f %6s  %9.4f %9.4f %6s  %8.1f\n", r.row.label.c_str(), r.F1,
                    r.row.expected_F1, r.pass_F1 ? "yes" : "NO", r.F2, r.row.expected_F2,
                    r.pass_F2 ? "yes" : "NO", r.seconds);
        all_pass = all_pass && r.pass_F1 && r.pass_F2;
    }
    std::printf("tolerance: +/- %.2f\n", oms::kTable1Tolerance);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sideband pulse-schedule synthesis and evaluation for optomechanical phonon states"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, target_text, model = "ideal", algorithm, out, schedule_path;
    bool auto_normalize = false;
    int jobs = 0;

    auto add_common = [&](CLI::App* sub, bool with_target) {
        sub->add_option("--config", config_path, "config file path");
        if (with_target) {
            sub->add_option("--target", target_text, "target state, e.g. \"0:0.7071, 2:-0.7071\"");
            sub->add_flag("--auto-normalize", auto_normalize, "rescale an unnormalized target");
        }
        sub->add_option("--jobs", jobs, "worker threads for sweeps");
        sub->add_option("--out", out, "output file path");
    };

    CLI::App* synth = app.add_subcommand("synth", "compile a target state into a pulse schedule");
    add_common(synth, true);
    synth->add_option("--algorithm", algorithm, "forward|reverse");

    CLI::App* simulate = app.add_subcommand("simulate", "evaluate a schedule file under a model");
    simulate->add_option("schedule", schedule_path, "schedule file from synth")->required();
    simulate->add_option("--model", model, "ideal|leakage|lindblad-simplified|lindblad-full");
    simulate->add_option("--out", out, "output file path");

    CLI::App* sweep_d = app.add_subcommand("sweep-delta", "fidelity vs |delta|/Omega (closed system)");
    add_common(sweep_d, false);

    CLI::App* sweep_g = app.add_subcommand("sweep-gamma", "fidelity vs gamma_c/Omega (open system)");
    add_common(sweep_g, true);

    CLI::App* table1 = app.add_subcommand("table1", "reproduce the preset-row fidelities");
    table1->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        oms::RunConfig cfg;
        if (!config_path.empty()) cfg = oms::RunConfig::parse_file(config_path);
        if (!target_text.empty()) cfg.target = target_text;
        if (auto_normalize) cfg.auto_normalize = true;
        if (!algorithm.empty()) cfg.algorithm = algorithm;
        if (!out.empty()) cfg.out = out;
        if (jobs > 0) cfg.jobs = jobs;

        if (synth->parsed()) return cmd_synth(cfg);
        if (simulate->parsed()) return cmd_simulate(schedule_path, model, out);
        if (sweep_d->parsed()) return cmd_sweep_delta(cfg);
        if (sweep_g->parsed()) return cmd_sweep_gamma(cfg);
        if (table1->parsed()) return cmd_table1(cfg.jobs);
    } catch (const oms::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const oms::SynthesisError& e) {
        std::fprintf(stderr, "synthesis error: %s\n", e.what());
        return kExitSynthesis;
    } catch (const oms::IntegrationError& e) {
        std::fprintf(stderr, "integration error: %s\n", e.what());
        return kExitIntegration;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
