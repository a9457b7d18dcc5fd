#pragma once

#include "omsynth/pulse.hpp"
#include "omsynth/target_state.hpp"

namespace oms {

/// Carrier + ascending red sidebands: one carrier segment fixing |c_0|, then
/// red(k) segments k = 1..N peeling each |c_k| off the excited-state
/// reservoir; the final red(N) is a half-period transfer. Needs the k-th
/// order sideband couplings, so it works at any eta where they are nonzero.
PulseSchedule forward_synthesize(const TargetState& target, const SystemParams& params);

/// Backward elimination with carrier + first-order red sidebands only
/// (2N segments): starting from the target, alternately zero <i,g| with an
/// inverse red segment and <i-1,e| with an inverse carrier segment, then
/// emit the segments in forward time order.
PulseSchedule reverse_synthesize(const TargetState& target, const SystemParams& params);

/// |<target, g| U_schedule |0,g>|^2, insensitive to global phase.
double verify_schedule(const PulseSchedule& schedule, const TargetState& target);

}  // namespace oms
