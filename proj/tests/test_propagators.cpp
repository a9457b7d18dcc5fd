#include <doctest.h>

#include <cmath>
#include <random>

#include "omsynth/propagators.hpp"
#include "omsynth/rabi.hpp"

using namespace oms;

namespace {
const SystemParams kParams = SystemParams::from_hz(7.47e9, 100e6, 10e6, 0, 0, 50e3);
constexpr Complex kI{0.0, 1.0};

bool unitary_within(const MatrixXc& u, double tol) {
    return (u.adjoint() * u - MatrixXc::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}
}  // namespace

TEST_CASE("carrier propagator") {
    const int C = 6;
    CHECK((carrier_propagator(kParams, 0, 0, C) - MatrixXc::Identity(2 * C, 2 * C)).cwiseAbs().maxCoeff() <
          1e-15);

    const double W00 = rabi_frequency(kParams.Omega, kParams.eta(), 0, 0);
    const SpaceShape shape(2, C);

    // half pulse: |0,g> -> -i |0,e>
    MatrixXc u = carrier_propagator(kParams, kPi / (2 * W00), 0, C);
    CHECK(std::abs(u(shape.index(1, 0), shape.index(0, 0)) - (-kI)) < 1e-12);
    CHECK(std::abs(u(shape.index(0, 0), shape.index(0, 0))) < 1e-12);

    // full flop: |0,g> -> -|0,g>
    u = carrier_propagator(kParams, kPi / W00, 0, C);
    CHECK(std::abs(u(shape.index(0, 0), shape.index(0, 0)) - Complex(-1, 0)) < 1e-12);

    // commutes with the phonon number operator
    MatrixXc n = MatrixXc::Zero(2 * C, 2 * C);
    for (int l = 0; l < 2; ++l)
        for (int m = 0; m < C; ++m) n(shape.index(l, m), shape.index(l, m)) = m;
    u = carrier_propagator(kParams, 0.7 / kParams.Omega, 0.3, C);
    CHECK((u * n - n * u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("red sideband propagator") {
    const int C = 6;
    const SpaceShape shape(2, C);
    CHECK((red_propagator(kParams, 1, 0, 0, C) - MatrixXc::Identity(2 * C, 2 * C)).cwiseAbs().maxCoeff() <
          1e-15);

    const double W01 = rabi_frequency(kParams.Omega, kParams.eta(), 0, 1);
    MatrixXc u = red_propagator(kParams, 1, kPi / (2 * W01), 0.4, C);
    // |0,e> -> i e^{i phi} |1,g>  (the -i(-1)^k factor at k = 1)
    const Complex amp = u(shape.index(0, 1), shape.index(1, 0));
    CHECK(std::abs(std::abs(amp) - 1.0) < 1e-12);
    CHECK(std::abs(amp - kI * std::exp(kI * 0.4)) < 1e-12);
    // |0,g> untouched (n < k)
    CHECK(std::abs(u(shape.index(0, 0), shape.index(0, 0)) - Complex(1, 0)) < 1e-15);

    // n < k rows of a second-order sideband leave |1,g> fixed
    u = red_propagator(kParams, 2, 1.23 / kParams.Omega, 0.1, C);
    CHECK(std::abs(u(shape.index(0, 1), shape.index(0, 1)) - Complex(1, 0)) < 1e-15);

    CHECK_THROWS_AS(red_propagator(kParams, 1, 1.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("blue sideband propagator") {
    const int C = 6;
    const SpaceShape shape(2, C);
    CHECK((blue_propagator(kParams, 1, 0, 0, C) - MatrixXc::Identity(2 * C, 2 * C)).cwiseAbs().maxCoeff() <
          1e-15);

    const double W01 = rabi_frequency(kParams.Omega, kParams.eta(), 0, 1);
    MatrixXc u = blue_propagator(kParams, 1, kPi / (2 * W01), 0.7, C);
    // |0,g> -> -i e^{-i phi} |1,e>
    const Complex amp = u(shape.index(1, 1), shape.index(0, 0));
    CHECK(std::abs(amp - (-kI) * std::exp(-kI * 0.7)) < 1e-12);
    // |1,e> under k = 2 stays fixed (n < k)
    u = blue_propagator(kParams, 2, 0.9 / kParams.Omega, 0.0, C);
    CHECK(std::abs(u(shape.index(1, 1), shape.index(1, 1)) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("sign conventions of the 2x2 blocks") {
    // pins every element of one carrier, red(1), red(2) and blue(1) block
    const int C = 8;
    const SpaceShape shape(2, C);
    const double eta = kParams.eta();
    const double phi = 0.9;
    const double t = 0.37 / kParams.Omega;

    MatrixXc u = carrier_propagator(kParams, t, phi, C);
    const int n = 2;
    const double thc = rabi_frequency(kParams.Omega, eta, n, 0) * t;
    CHECK(std::abs(u(shape.index(0, n), shape.index(0, n)) - std::cos(thc)) < 1e-14);
    CHECK(std::abs(u(shape.index(1, n), shape.index(0, n)) - (-kI * std::exp(-kI * phi) * std::sin(thc))) < 1e-14);
    CHECK(std::abs(u(shape.index(0, n), shape.index(1, n)) - (-kI * std::exp(kI * phi) * std::sin(thc))) < 1e-14);

    for (int k : {1, 2}) {
        u = red_propagator(kParams, k, t, phi, C);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double th = rabi_frequency(kParams.Omega, eta, n, k) * t;
        CHECK(std::abs(u(shape.index(1, n), shape.index(1, n)) - std::cos(th)) < 1e-14);
        CHECK(std::abs(u(shape.index(0, n + k), shape.index(1, n)) -
                       (-kI * sign * std::exp(kI * phi) * std::sin(th))) < 1e-14);
        CHECK(std::abs(u(shape.index(1, n), shape.index(0, n + k)) -
                       (-kI * sign * std::exp(-kI * phi) * std::sin(th))) < 1e-14);
    }

    u = blue_propagator(kParams, 1, t, phi, C);
    const double thb = rabi_frequency(kParams.Omega, eta, n, 1) * t;
    CHECK(std::abs(u(shape.index(1, n + 1), shape.index(0, n)) -
                   (-kI * std::exp(-kI * phi) * std::sin(thb))) < 1e-14);
    CHECK(std::abs(u(shape.index(0, n), shape.index(1, n + 1)) -
                   (-kI * std::exp(kI * phi) * std::sin(thb))) < 1e-14);
}

TEST_CASE("propagators are unitary and form a semigroup in t") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> tdist(0.0, 20.0 / kParams.Omega);
    std::uniform_real_distribution<double> pdist(0.0, kTwoPi);
    const int C = 9;
    for (int trial = 0; trial < 20; ++trial) {
        const double t1 = tdist(rng), t2 = tdist(rng), phi = pdist(rng);
        MatrixXc uc = carrier_propagator(kParams, t1, phi, C);
        MatrixXc ur = red_propagator(kParams, 1, t1, phi, C);
        MatrixXc ub = blue_propagator(kParams, 2, t1, phi, C);
        CHECK(unitary_within(uc, 1e-12));
        CHECK(unitary_within(ur, 1e-12));
        CHECK(unitary_within(ub, 1e-12));

        MatrixXc split = red_propagator(kParams, 1, t2, phi, C) * ur;
        MatrixXc whole = red_propagator(kParams, 1, t1 + t2, phi, C);
        CHECK((split - whole).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("apply_schedule") {
    const SpaceShape shape(2, 8);
    const Ket vac = Ket::basis(shape, 0, 0);

    PulseSchedule empty;
    empty.params = kParams;
    Ket out = apply_schedule(empty, vac);
    CHECK((out.amplitudes - vac.amplitudes).cwiseAbs().maxCoeff() == 0.0);

    const double eta = kParams.eta();
    const double W00 = rabi_frequency(kParams.Omega, eta, 0, 0);
    const double W01 = rabi_frequency(kParams.Omega, eta, 0, 1);
    PulseSchedule two;
    two.params = kParams;
    two.segments = {PulseSegment::carrier(kPi / (2 * W00), 0.0),
                    PulseSegment::red(1, kPi / (2 * W01), 0.0)};
    out = apply_schedule(two, vac);
    CHECK(std::abs(std::abs(out.amp(0, 1)) - 1.0) < 1e-12);
    CHECK(out.norm_error() < 1e-12);
}
