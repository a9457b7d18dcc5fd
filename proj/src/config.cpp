#include "omsynth/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "omsynth/errors.hpp"
#include "omsynth/rabi.hpp"
#include "omsynth/sweep.hpp"

namespace oms {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError("config: trailing characters in " + key + " = '" + v + "'");
        return x;
    } catch (const std::invalid_argument&) {
        throw ConfigError("config: bad number for " + key + ": '" + v + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("config: number out of range for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    double x = to_double(key, v);
    int i = static_cast<int>(x);
    if (double(i) != x) throw ConfigError("config: expected integer for " + key);
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: expected boolean for " + key + ", got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: bad section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "target" && section != "sweep" && section != "run")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "system.omega_c_hz") cfg.omega_c_hz = to_double(qual, value);
        else if (qual == "system.omega_m_hz") cfg.omega_m_hz = to_double(qual, value);
        else if (qual == "system.g_hz") cfg.g_hz = to_double(qual, value);
        else if (qual == "system.gamma_c_hz") cfg.gamma_c_hz = to_double(qual, value);
        else if (qual == "system.gamma_m_hz") cfg.gamma_m_hz = to_double(qual, value);
        else if (qual == "system.drive_hz") cfg.drive_hz = to_double(qual, value);
        else if (qual == "system.nbar_m") cfg.nbar_m = to_double(qual, value);
        else if (qual == "system.phi_d_rad") cfg.phi_d_rad = to_double(qual, value);
        else if (qual == "system.temperature_k") cfg.temperature_k = to_double(qual, value);
        else if (qual == "target.coefficients") cfg.target = value;
        else if (qual == "target.auto_normalize") cfg.auto_normalize = to_bool(qual, value);
        else if (qual == "sweep.axis") cfg.axis = value;
        else if (qual == "sweep.min") cfg.min = to_double(qual, value);
        else if (qual == "sweep.max") cfg.max = to_double(qual, value);
        else if (qual == "sweep.points") cfg.points = to_int(qual, value);
        else if (qual == "sweep.scale") cfg.scale = value;
        else if (qual == "sweep.eta") cfg.eta = to_double(qual, value);
        else if (qual == "sweep.delta_over_omega") cfg.delta_over_omega = to_double(qual, value);
        else if (qual == "sweep.gamma_m_ratio") cfg.gamma_m_ratio = to_double(qual, value);
        else if (qual == "sweep.nbar_list") cfg.nbar_list = to_list(qual, value);
        else if (qual == "run.model") cfg.model = value;
        else if (qual == "run.algorithm") cfg.algorithm = value;
        else if (qual == "run.jobs") cfg.jobs = to_int(qual, value);
        else if (qual == "run.out") cfg.out = value;
        else throw ConfigError("config: unknown key '" + key + "' in section [" + section + "]");
    }
    if (cfg.points < 1) throw ConfigError("config: sweep.points must be >= 1");
    if (cfg.scale != "linear" && cfg.scale != "log")
        throw ConfigError("config: sweep.scale must be linear or log");
    if (cfg.jobs < 1) throw ConfigError("config: run.jobs must be >= 1");
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os << "[system]\n";
    os << "omega_c_hz = " << num(omega_c_hz) << "\n";
    os << "omega_m_hz = " << num(omega_m_hz) << "\n";
    os << "g_hz = " << num(g_hz) << "\n";
    os << "gamma_c_hz = " << num(gamma_c_hz) << "\n";
    os << "gamma_m_hz = " << num(gamma_m_hz) << "\n";
    os << "drive_hz = " << num(drive_hz) << "\n";
    os << "nbar_m = " << num(nbar_m) << "\n";
    os << "phi_d_rad = " << num(phi_d_rad) << "\n";
    if (temperature_k) os << "temperature_k = " << num(*temperature_k) << "\n";
    os << "\n[target]\n";
    if (!target.empty()) os << "coefficients = " << target << "\n";
    os << "auto_normalize = " << (auto_normalize ? "true" : "false") << "\n";
    os << "\n[sweep]\n";
    os << "axis = " << axis << "\n";
    os << "min = " << num(min) << "\n";
    os << "max = " << num(max) << "\n";
    os << "points = " << points << "\n";
    os << "scale = " << scale << "\n";
    os << "eta = " << num(eta) << "\n";
    os << "delta_over_omega = " << num(delta_over_omega) << "\n";
    os << "gamma_m_ratio = " << num(gamma_m_ratio) << "\n";
    os << "nbar_list = ";
    for (size_t i = 0; i < nbar_list.size(); ++i) os << (i ? ", " : "") << num(nbar_list[i]);
    os << "\n";
    os << "\n[run]\n";
    os << "model = " << model << "\n";
    os << "algorithm = " << algorithm << "\n";
    os << "jobs = " << jobs << "\n";
    if (!out.empty()) os << "out = " << out << "\n";
    return os.str();
}

SystemParams RunConfig::system_params() const {
    double nbar = nbar_m;
    if (temperature_k)
        nbar = thermal_occupation(kTwoPi * omega_m_hz, *temperature_k);
    return SystemParams::from_hz(omega_c_hz, omega_m_hz, g_hz, gamma_c_hz, gamma_m_hz, drive_hz,
                                 nbar, phi_d_rad);
}

TargetState RunConfig::target_state() const {
    if (target.empty()) throw ConfigError("config: no target given ([target] coefficients or --target)");
    return TargetState::parse(target, auto_normalize);
}

std::vector<double> RunConfig::sweep_axis() const {
    return scale == "log" ? logspace(min, max, points) : linspace(min, max, points);
}

}  // namespace oms
