#include "omsynth/pulse.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "omsynth/errors.hpp"

namespace oms {

namespace {

const char* kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::Carrier: return "carrier";
        case SegmentKind::Red: return "red";
        case SegmentKind::Blue: return "blue";
    }
    return "?";
}

SegmentKind kind_from_name(const std::string& s) {
    if (s == "carrier") return SegmentKind::Carrier;
    if (s == "red") return SegmentKind::Red;
    if (s == "blue") return SegmentKind::Blue;
    throw ConfigError("schedule: unknown segment kind '" + s + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string schedule_to_text(const PulseSchedule& schedule) {
    const SystemParams& p = schedule.params;
    std::string out;
    auto param = [&out](const std::string& key, const std::string& value) {
        out += "# param " + key + " = " + value + "\n";
    };
    param("omega_c_hz", fmt(p.omega_c / kTwoPi));
    param("omega_m_hz", fmt(p.omega_m / kTwoPi));
    param("g_hz", fmt(p.g / kTwoPi));
    param("gamma_c_hz", fmt(p.gamma_c / kTwoPi));
    param("gamma_m_hz", fmt(p.gamma_m / kTwoPi));
    param("drive_hz", fmt(p.Omega / kTwoPi));
    param("nbar_m", fmt(p.nbar_m));
    param("phi_d_rad", fmt(p.phi_d));
    if (schedule.target) param("target", schedule.target->serialize());
    for (const auto& s : schedule.segments) {
        out += kind_name(s.kind);
        out += ' ';
        out += std::to_string(s.sideband);
        out += ' ';
        out += fmt(s.duration);
        out += ' ';
        out += fmt(s.phase);
        out += '\n';
    }
    return out;
}

PulseSchedule schedule_from_text(const std::string& text) {
    std::map<std::string, std::string> header;
    std::vector<PulseSegment> segments;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string word, key, eq;
            if (ls >> word && word == "param" && ls >> key >> eq && eq == "=") {
                std::string value;
                std::getline(ls, value);
                size_t a = value.find_first_not_of(' ');
                header[key] = (a == std::string::npos) ? "" : value.substr(a);
            }
            continue;
        }
        std::istringstream ls(line);
        std::string kind;
        int k;
        double t, phi;
        if (!(ls >> kind >> k >> t >> phi))
            throw ConfigError("schedule: bad segment at line " + std::to_string(lineno) + ": '" + line + "'");
        PulseSegment seg{kind_from_name(kind), k, t, phi};
        if (seg.kind == SegmentKind::Carrier && seg.sideband != 0)
            throw ConfigError("schedule: carrier segment must have k = 0 (line " + std::to_string(lineno) + ")");
        if (seg.kind != SegmentKind::Carrier && seg.sideband < 1)
            throw ConfigError("schedule: sideband order must be >= 1 (line " + std::to_string(lineno) + ")");
        if (!(seg.duration >= 0))
            throw ConfigError("schedule: negative duration (line " + std::to_string(lineno) + ")");
        segments.push_back(seg);
    }

    auto get = [&header](const std::string& key) -> double {
        auto it = header.find(key);
        if (it == header.end()) throw ConfigError("schedule: missing header param '" + key + "'");
        return std::stod(it->second);
    };
    PulseSchedule schedule;
    schedule.params = SystemParams::from_hz(get("omega_c_hz"), get("omega_m_hz"), get("g_hz"),
                                            get("gamma_c_hz"), get("gamma_m_hz"), get("drive_hz"),
                                            header.count("nbar_m") ? get("nbar_m") : 0.0,
                                            header.count("phi_d_rad") ? get("phi_d_rad") : 0.0);
    if (auto it = header.find("target"); it != header.end())
        schedule.target = TargetState::parse(it->second);
    schedule.segments = std::move(segments);
    return schedule;
}

void write_schedule_file(const PulseSchedule& schedule, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << schedule_to_text(schedule);
    if (!out) throw ConfigError("failed writing '" + path + "'");
}

PulseSchedule read_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schedule file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return schedule_from_text(ss.str());
}

}  // namespace oms
