#pragma once

#include <stdexcept>
#include <string>

namespace oms {

/// Bad user input: malformed config, target, or schedule file.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A pulse solve failed (infeasible target, vanishing Rabi, no convergence).
struct SynthesisError : std::runtime_error {
    explicit SynthesisError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive integration could not proceed or a run invariant broke.
struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oms
