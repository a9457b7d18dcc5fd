#include "omsynth/target_state.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "omsynth/errors.hpp"

namespace oms {

TargetState TargetState::from_coefficients(VectorXc c, bool auto_normalize) {
    if (c.size() == 0) throw ConfigError("target: no coefficients given");
    double norm = c.norm();
    if (norm <= 0) throw ConfigError("target: zero norm");
    if (!auto_normalize && std::abs(norm - 1.0) > 1e-9) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "target: norm %.12g differs from 1 (use auto-normalize)", norm);
        throw ConfigError(buf);
    }
    c /= norm;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c(i)) > 1e-12) {
            c *= std::exp(Complex(0, -std::arg(c(i))));
            c(i) = Complex(std::abs(c(i)), 0);
            break;
        }
    }
    TargetState t;
    t.coefficients = std::move(c);
    return t;
}

int TargetState::max_index() const {
    int last = 0;
    for (Eigen::Index i = 0; i < coefficients.size(); ++i)
        if (std::abs(coefficients(i)) > 1e-12) last = static_cast<int>(i);
    return last;
}

double TargetState::overlap_sq(const VectorXc& amps) const {
    Complex ov = 0;
    const Eigen::Index n = std::min(coefficients.size(), amps.size());
    for (Eigen::Index i = 0; i < n; ++i) ov += std::conj(coefficients(i)) * amps(i);
    return std::norm(ov);
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw ConfigError("target: trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("target: bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("target: number out of range '" + s + "'");
    }
}

Complex parse_value(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw ConfigError("target: empty coefficient");
    if (auto at = s.find('@'); at != std::string::npos) {
        double mag = parse_real(s.substr(0, at));
        double ph = parse_real(s.substr(at + 1));
        return std::polar(mag, ph);
    }
    if (s.back() == 'i' || s.back() == 'j') {
        std::string body = s.substr(0, s.size() - 1);
        // split "a+bi" / "a-bi" at the last sign that is not an exponent sign
        for (size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                double re = parse_real(body.substr(0, i));
                std::string im_str = body.substr(i);
                if (im_str == "+") im_str = "1";
                if (im_str == "-") im_str = "-1";
                return Complex(re, parse_real(im_str));
            }
        }
        if (body.empty() || body == "+") return Complex(0, 1);
        if (body == "-") return Complex(0, -1);
        return Complex(0, parse_real(body));
    }
    return Complex(parse_real(s), 0);
}

}  // namespace

TargetState TargetState::parse(const std::string& text, bool auto_normalize) {
    std::string entry;
    std::vector<std::pair<int, Complex>> entries;
    int max_k = 0;
    std::string buf = text;
    for (char& ch : buf)
        if (ch == ';') ch = ',';
    std::stringstream ss(buf);
    while (std::getline(ss, entry, ',')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw ConfigError("target: expected 'k:value', got '" + entry + "'");
        int k;
        std::string ks = trim(entry.substr(0, colon));
        auto res = std::from_chars(ks.data(), ks.data() + ks.size(), k);
        if (res.ec != std::errc() || res.ptr != ks.data() + ks.size() || k < 0)
            throw ConfigError("target: bad Fock index '" + ks + "'");
        entries.emplace_back(k, parse_value(entry.substr(colon + 1)));
        max_k = std::max(max_k, k);
    }
    if (entries.empty()) throw ConfigError("target: no coefficients in '" + text + "'");
    VectorXc c = VectorXc::Zero(max_k + 1);
    for (auto& [k, v] : entries) c(k) += v;
    return from_coefficients(std::move(c), auto_normalize);
}

std::string TargetState::serialize() const {
    std::string out;
    char buf[96];
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
        const Complex v = coefficients(i);
        if (std::abs(v) == 0.0 && i != 0) continue;
        if (!out.empty()) out += "; ";
        if (v.imag() == 0.0)
            std::snprintf(buf, sizeof(buf), "%lld:%.17g", static_cast<long long>(i), v.real());
        else
            std::snprintf(buf, sizeof(buf), "%lld:%.17g%+.17gi", static_cast<long long>(i), v.real(),
                          v.imag());
        out += buf;
    }
    return out;
}

}  // namespace oms
