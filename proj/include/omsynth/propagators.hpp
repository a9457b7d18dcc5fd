#pragma once

#include "omsynth/pulse.hpp"
#include "omsynth/types.hpp"

namespace oms {

/// Exact interaction-picture time-evolution operators of the two-level
/// (photon qubit) model, one 2x2 rotation per resonant pair. All act on the
/// composite SpaceShape(2, cutoff) with photon-major indexing.
///
/// Carrier (w_d = w): per phonon n, on (|n,g>, |n,e>):
///   |n,g> -> cos(W t)|n,g> - i e^{-i phi} sin(W t)|n,e>,  W = Omega_{n,0}.
MatrixXc carrier_propagator(const SystemParams& params, double t, double phase, int cutoff);

/// Red sideband of order k (w_d = w - k w_m): on (|n,e>, |n+k,g>):
///   |n,e> -> cos(W t)|n,e> - i (-1)^k e^{+i phi} sin(W t)|n+k,g>,
/// W = Omega_{n,k}; |n,g> with n < k is left fixed. Pairs whose upper member
/// would cross the truncation are left as identity.
MatrixXc red_propagator(const SystemParams& params, int k, double t, double phase, int cutoff);

/// Blue sideband of order k (w_d = w + k w_m): on (|n,g>, |n+k,e>):
///   |n,g> -> cos(W t)|n,g> - i e^{-i phi} sin(W t)|n+k,e>.
MatrixXc blue_propagator(const SystemParams& params, int k, double t, double phase, int cutoff);

MatrixXc segment_propagator(const SystemParams& params, const PulseSegment& seg, int cutoff);

/// Applies the segments in time order. The initial ket must be normalized;
/// the result is renormalization-checked to 1e-12.
Ket apply_schedule(const PulseSchedule& schedule, const Ket& initial);

}  // namespace oms
