#include <doctest.h>

#include <cmath>
#include <random>

#include "omsynth/errors.hpp"
#include "omsynth/rabi.hpp"
#include "omsynth/synthesis.hpp"

using namespace oms;

namespace {
const SystemParams kParams = SystemParams::from_hz(7.47e9, 100e6, 10e6, 0, 0, 50e3);

TargetState make_target(std::initializer_list<Complex> cs) {
    VectorXc v(static_cast<Eigen::Index>(cs.size()));
    Eigen::Index i = 0;
    for (Complex c : cs) v(i++) = c;
    return TargetState::from_coefficients(v, true);
}
}  // namespace

TEST_CASE("target state canonicalization") {
    TargetState t = make_target({Complex(0, 0), Complex(0, 0.5), Complex(0.5, 0)});
    CHECK(std::abs(t.coefficients.norm() - 1.0) < 1e-15);
    CHECK(t.coefficients(1).imag() == 0.0);
    CHECK(t.coefficients(1).real() > 0.0);
    CHECK(t.max_index() == 2);

    VectorXc bad(2);
    bad << Complex(0.6, 0), Complex(0.6, 0);
    CHECK_THROWS_AS(TargetState::from_coefficients(bad, false), ConfigError);
}

TEST_CASE("forward synthesis examples") {
    // |0>: nothing to do
    CHECK(forward_synthesize(make_target({1.0}), kParams).segments.empty());

    const double eta = kParams.eta();
    const double W00 = rabi_frequency(kParams.Omega, eta, 0, 0);
    const double W01 = rabi_frequency(kParams.Omega, eta, 0, 1);

    // |1>: carrier half pulse then red(1) half pulse
    PulseSchedule s = forward_synthesize(make_target({0.0, 1.0}), kParams);
    REQUIRE(s.segments.size() == 2);
    CHECK(s.segments[0].kind == SegmentKind::Carrier);
    CHECK(s.segments[0].duration == doctest::Approx(kPi / (2 * W00)).epsilon(1e-13));
    CHECK(s.segments[1].kind == SegmentKind::Red);
    CHECK(s.segments[1].sideband == 1);
    CHECK(s.segments[1].duration == doctest::Approx(kPi / (2 * W01)).epsilon(1e-13));
    CHECK(verify_schedule(s, *s.target) >= 1.0 - 1e-12);

    // (|0> + |1>)/sqrt(2): quarter-angle carrier, full red transfer, phase 0
    const double inv = 1 / std::sqrt(2.0);
    s = forward_synthesize(make_target({inv, inv}), kParams);
    REQUIRE(s.segments.size() == 2);
    CHECK(s.segments[0].duration == doctest::Approx(kPi / (4 * W00)).epsilon(1e-13));
    CHECK(s.segments[1].duration == doctest::Approx(kPi / (2 * W01)).epsilon(1e-13));
    CHECK(s.segments[1].phase == doctest::Approx(0.0));
    CHECK(verify_schedule(s, *s.target) >= 1.0 - 1e-9);
}

TEST_CASE("forward synthesis rejects unreachable sidebands") {
    SystemParams tiny = kParams;
    tiny.g = 1e-9 * tiny.omega_m;  // eta = 1e-9 kills the k = 2 coupling
    CHECK_THROWS_AS(forward_synthesize(make_target({0.0, 0.0, 1.0}), tiny), SynthesisError);
}

TEST_CASE("reverse synthesis examples") {
    CHECK(reverse_synthesize(make_target({1.0}), kParams).segments.empty());

    // |1>: same physical pulse pair as the forward method
    PulseSchedule f = forward_synthesize(make_target({0.0, 1.0}), kParams);
    PulseSchedule r = reverse_synthesize(make_target({0.0, 1.0}), kParams);
    REQUIRE(r.segments.size() == 2);
    CHECK(r.segments[0].duration == doctest::Approx(f.segments[0].duration).epsilon(1e-12));
    CHECK(r.segments[1].duration == doctest::Approx(f.segments[1].duration).epsilon(1e-12));
    CHECK(verify_schedule(r, *r.target) >= 1.0 - 1e-9);

    // (|0> - |2>)/sqrt(2): the second reference target, 2N = 4 segments
    const double inv = 1 / std::sqrt(2.0);
    PulseSchedule s = reverse_synthesize(make_target({inv, 0.0, -inv}), kParams);
    REQUIRE(s.segments.size() == 4);
    CHECK(s.segments[0].kind == SegmentKind::Carrier);
    CHECK(s.segments[1].kind == SegmentKind::Red);
    CHECK(s.segments[2].kind == SegmentKind::Carrier);
    CHECK(s.segments[3].kind == SegmentKind::Red);
    CHECK(verify_schedule(s, *s.target) >= 1.0 - 1e-9);
}

TEST_CASE("random targets round-trip through both algorithms") {
    std::mt19937 rng(42);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> ndist(1, 5);
    const double eta = kParams.eta();
    for (int trial = 0; trial < 200; ++trial) {
        const int N = ndist(rng);
        VectorXc c(N + 1);
        for (int i = 0; i <= N; ++i) c(i) = Complex(gauss(rng), gauss(rng));
        const TargetState target = TargetState::from_coefficients(c, true);

        PulseSchedule fwd = forward_synthesize(target, kParams);
        PulseSchedule rev = reverse_synthesize(target, kParams);
        CHECK(verify_schedule(fwd, target) >= 1.0 - 1e-9);
        CHECK(verify_schedule(rev, target) >= 1.0 - 1e-9);

        const int n_eff = target.max_index();
        CHECK(static_cast<int>(fwd.segments.size()) == n_eff + 1);
        CHECK(static_cast<int>(rev.segments.size()) == 2 * n_eff);
        for (const auto& seg : fwd.segments) {
            CHECK(std::isfinite(seg.duration));
            CHECK(seg.duration >= 0.0);
            CHECK(seg.phase >= 0.0);
            CHECK(seg.phase < kTwoPi);
        }
        for (size_t j = 0; j < rev.segments.size(); ++j) {
            const auto& seg = rev.segments[j];
            CHECK(std::isfinite(seg.duration));
            CHECK(seg.duration >= 0.0);
            CHECK(seg.phase >= 0.0);
            CHECK(seg.phase < kTwoPi);
            // smallest-branch solutions stay below the quarter period;
            // time-ordered pair i = j/2 + 1 acts on Fock level i - 1
            const int level = static_cast<int>(j) / 2;
            const double W = (seg.kind == SegmentKind::Carrier)
                                 ? rabi_frequency(kParams.Omega, eta, level, 0)
                                 : rabi_frequency(kParams.Omega, eta, level, 1);
            CHECK(seg.duration <= kPi / (2 * std::abs(W)) + 1e-12 / std::abs(W));
        }
    }
}

TEST_CASE("verify_schedule basics") {
    PulseSchedule empty;
    empty.params = kParams;
    CHECK(verify_schedule(empty, make_target({1.0})) == doctest::Approx(1.0).epsilon(1e-12));

    PulseSchedule one = forward_synthesize(make_target({0.0, 1.0}), kParams);
    CHECK(verify_schedule(one, make_target({1.0})) < 1e-12);
}
