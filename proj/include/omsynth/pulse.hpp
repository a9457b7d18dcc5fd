#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omsynth/params.hpp"
#include "omsynth/target_state.hpp"

namespace oms {

enum class SegmentKind { Carrier, Red, Blue };

/// One drive segment. The kind fixes the drive frequency relative to the
/// shifted cavity frequency w: carrier w, red w - k w_m, blue w + k w_m.
struct PulseSegment {
    SegmentKind kind = SegmentKind::Carrier;
    int sideband = 0;       // order k (0 for carrier, >= 1 for sidebands)
    double duration = 0;    // seconds, >= 0
    double phase = 0;       // radians

    static PulseSegment carrier(double t, double phi) { return {SegmentKind::Carrier, 0, t, phi}; }
    static PulseSegment red(int k, double t, double phi) { return {SegmentKind::Red, k, t, phi}; }
    static PulseSegment blue(int k, double t, double phi) { return {SegmentKind::Blue, k, t, phi}; }
};

/// Ordered drive sequence plus the parameters it was solved against.
/// Synthesis attaches the target it prepares.
struct PulseSchedule {
    std::vector<PulseSegment> segments;
    SystemParams params;
    std::optional<TargetState> target;

    double total_time() const {
        double t = 0;
        for (const auto& s : segments) t += s.duration;
        return t;
    }
};

/// Line-oriented text format: '# param key = value' header lines carrying the
/// system parameters in Hz (and the target, when present), then one
/// 'kind k duration_seconds phase_radians' line per segment.
std::string schedule_to_text(const PulseSchedule& schedule);
PulseSchedule schedule_from_text(const std::string& text);

void write_schedule_file(const PulseSchedule& schedule, const std::string& path);
PulseSchedule read_schedule_file(const std::string& path);

}  // namespace oms
