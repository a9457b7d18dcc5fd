#include <doctest.h>

#include <cmath>

#include "omsynth/fock.hpp"
#include "omsynth/rabi.hpp"

using namespace oms;

TEST_CASE("sideband Rabi frequency basics") {
    CHECK(rabi_frequency(2.5, 0.0, 3, 0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(std::abs(rabi_frequency(1.0, 0.1, 0, 0) - 0.99501247919268232) < 1e-15);
    CHECK(std::abs(rabi_frequency(1.0, 0.1, 0, 1) - 0.099501247919268232) < 1e-15);
    CHECK_THROWS_AS(rabi_frequency(1.0, 0.1, -1, 0), std::invalid_argument);
}

TEST_CASE("Rabi frequency leading order at small eta") {
    const double eta = 1e-4;
    for (int n = 0; n <= 6; ++n) {
        for (int k = 0; k <= 3; ++k) {
            double ratio = 1, kfact = 1;
            for (int i = n + 1; i <= n + k; ++i) ratio *= i;
            for (int i = 1; i <= k; ++i) kfact *= i;
            const double leading = std::pow(eta, k) * std::sqrt(ratio) / kfact;
            const double full = rabi_frequency(1.0, eta, n, k);
            CHECK(std::abs(full - leading) < 1e-6 * std::abs(leading));
        }
    }
}

TEST_CASE("Rabi frequency equals displacement matrix elements") {
    // independent oracle: Omega <n+k| exp(eta(b^dag - b)) |n>
    const int C = 40;
    for (double eta : {0.01, 0.1, 0.3}) {
        const MatrixXc d = displacement<double>(eta, C);
        for (int n = 0; n <= 10; ++n) {
            for (int k = 0; k <= 3; ++k) {
                const double expected = d(n + k, n).real();
                const double got = rabi_frequency(1.0, eta, n, k);
                CHECK(std::abs(got - expected) <= 1e-10 * std::abs(expected));
            }
        }
    }
}

TEST_CASE("Lamb-Dicke criterion") {
    CHECK(lamb_dicke_ok(0.1, 0.0));
    CHECK_FALSE(lamb_dicke_ok(0.3, 3.0));
    CHECK(lamb_dicke_ok(0.1, 3.0));  // boundary value counts as ok
}

TEST_CASE("thermal occupation") {
    const double omega = kTwoPi * 100e6;
    CHECK(thermal_occupation(omega, 0.0) == 0.0);
    CHECK(thermal_occupation(omega, -1.0) == 0.0);

    // hbar w = kB T ln 2 forces nbar = 1
    const double hbar = 1.054571817e-34, kB = 1.380649e-23;
    const double T = hbar * omega / (kB * std::log(2.0));
    CHECK(thermal_occupation(omega, T) == doctest::Approx(1.0).epsilon(1e-12));

    // hbar w / kB T = 0.1
    const double T01 = hbar * omega / (kB * 0.1);
    CHECK(thermal_occupation(omega, T01) == doctest::Approx(9.5083319447750494).epsilon(1e-12));

    double prev = -1;
    for (double t = 1e-4; t < 1e2; t *= 3) {
        double nb = thermal_occupation(omega, t);
        CHECK(nb > prev);
        prev = nb;
    }
}
