#pragma once

#include <string>

#include "omsynth/types.hpp"

namespace oms {

/// Normalized phonon superposition c_0..c_N with the global phase fixed so
/// the first nonzero coefficient is real and positive.
struct TargetState {
    VectorXc coefficients;

    /// Validates the norm (within 1e-9 unless auto_normalize), normalizes
    /// exactly and canonicalizes the global phase.
    static TargetState from_coefficients(VectorXc c, bool auto_normalize = false);

    /// Highest index with a nonzero coefficient (0 for the vacuum target).
    int max_index() const;

    /// Overlap |<target|c'>|^2 against a phonon amplitude vector.
    double overlap_sq(const VectorXc& amps) const;

    /// Parse "k:value" entries separated by commas or semicolons, where value
    /// is real ("-0.7071"), complex ("0.5+0.5i"), or polar ("0.7071@1.5708").
    static TargetState parse(const std::string& text, bool auto_normalize = false);
    std::string serialize() const;
};

}  // namespace oms
