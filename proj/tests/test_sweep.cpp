#include <doctest.h>

#include <cmath>

#include "omsynth/leakage.hpp"
#include "omsynth/sweep.hpp"
#include "omsynth/synthesis.hpp"

using namespace oms;

TEST_CASE("delta sweep single point") {
    const auto rows = sweep_delta(0.1, {40.0}, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].error.empty());
    CHECK(rows[0].f1_analytic == doctest::Approx(fidelity_F1_analytic(1.0, 0.1, -40.0)).epsilon(1e-14));
    CHECK(rows[0].f2_analytic == doctest::Approx(fidelity_F2_analytic(1.0, 0.1, -40.0)).epsilon(1e-14));
    CHECK(rows[0].f1_numeric > 0.99);
    CHECK(rows[0].f2_numeric > 0.99);
    CHECK(std::abs(rows[0].f1_numeric - rows[0].f1_analytic) < 0.01);
}

TEST_CASE("gamma sweep reaches the leakage-free limit") {
    // gamma = 0, nbar = 0, |delta|/Omega huge: unit fidelity up to the
    // linearization gap, which vanishes at small eta
    VectorXc c = VectorXc::Zero(3);
    c(2) = 1.0;
    const TargetState target = TargetState::from_coefficients(c);
    const auto rows = sweep_gamma(target, 0.01, 1e6, 0.1, {0.0}, {0.0}, 1);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].error.empty());
    CHECK(std::abs(rows[0].fidelities[0] - 1.0) < 1e-6);
}

TEST_CASE("gamma sweep orders by axis regardless of job count") {
    VectorXc c = VectorXc::Zero(2);
    c(1) = 1.0;
    const TargetState target = TargetState::from_coefficients(c);
    const std::vector<double> axis{0.0, 0.02};
    const auto serial = sweep_gamma(target, 0.1, 10.0, 0.1, {0.0, 1.0}, axis, 1);
    const auto parallel = sweep_gamma(target, 0.1, 10.0, 0.1, {0.0, 1.0}, axis, 4);
    REQUIRE(serial.size() == 2);
    REQUIRE(parallel.size() == 2);
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].gamma_c_over_omega == axis[i]);
        for (size_t j = 0; j < serial[i].fidelities.size(); ++j)
            CHECK(serial[i].fidelities[j] == doctest::Approx(parallel[i].fidelities[j]).epsilon(1e-12));
    }
    CHECK(serial[1].fidelities[0] < serial[0].fidelities[0]);
}
