#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "omsynth/fock.hpp"

using namespace oms;

TEST_CASE("phonon lowering operator") {
    MatrixXc b = phonon_lowering<double>(2);
    CHECK(std::abs(b(0, 1) - 1.0) < 1e-15);
    CHECK(b.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));

    b = phonon_lowering<double>(4);
    CHECK(std::abs(b(2, 3) - std::sqrt(3.0)) < 1e-15);

    b = phonon_lowering<double>(3);
    MatrixXc n = b.adjoint() * b;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(n(i, i) - double(i)) < 1e-15);
    CHECK((n - n.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(phonon_lowering<double>(1), std::invalid_argument);
}

TEST_CASE("displacement operator") {
    CHECK((displacement<double>(0.0, 8) - MatrixXc::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);

    MatrixXc d = displacement<double>(0.1, 20);
    CHECK(std::abs(d(0, 0) - 0.99501247919268232) < 1e-13);
    CHECK(std::abs(d(1, 0) - 0.099501247919268232) < 1e-13);

    // inverse pair stays the identity on the truncation
    for (double eta : {0.1, 0.3}) {
        MatrixXc fwd = displacement<double>(eta, 20);
        MatrixXc bwd = displacement<double>(-eta, 20);
        CHECK((fwd * bwd - MatrixXc::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((fwd.adjoint() * fwd - MatrixXc::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("displacement matches the eigendecomposition route") {
    // independent route: exp(K) = V exp(-i diag) V^dag with H = iK Hermitian
    const int C = 24;
    const double eta = 0.25;
    MatrixXc b = phonon_lowering<double>(C);
    MatrixXc herm = Complex(0, 1) * (eta * (b.adjoint() - b));
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm);
    VectorXc phases = (Complex(0, -1) * es.eigenvalues().cast<Complex>()).array().exp();
    MatrixXc viaEig = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    CHECK((viaEig - displacement<double>(eta, C)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("polaron dressing") {
    const SpaceShape shape(3, 12);
    MatrixXc a = lift_photon(photon_lowering<double>(3), shape);
    MatrixXc b = lift_phonon(phonon_lowering<double>(12), shape);

    auto [a0, b0] = polaron_dress(a, b, 0.0);
    CHECK((a0 - a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((b0 - b).cwiseAbs().maxCoeff() < 1e-15);

    auto [ad, bd] = polaron_dress(a, b, 0.1);
    // photon vacuum sector: a^dag a = 0, so the dressed b acts as the bare b
    const int C = shape.phonon_cutoff;
    CHECK((bd.topLeftCorner(C, C) - b.topLeftCorner(C, C)).cwiseAbs().maxCoeff() < 1e-15);
    // <0,g| a~ |0,e> = e^{-eta^2/2}
    CHECK(std::abs(ad(shape.index(0, 0), shape.index(1, 0)) - Complex(0.99501247919268232, 0)) < 1e-13);

    CHECK_THROWS_AS(polaron_dress(a, phonon_lowering<double>(12), 0.1), std::invalid_argument);
}

TEST_CASE("partial trace over the photon") {
    const SpaceShape shape(2, 3);

    DensityMatrix rho = DensityMatrix::pure(Ket::basis(shape, 0, 0));
    DensityMatrix red = partial_trace_photon(rho);
    CHECK(std::abs(red.entries(0, 0) - 1.0) < 1e-15);
    CHECK(red.entries.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));

    // block-diagonal mixture
    MatrixXc mix = MatrixXc::Zero(shape.dim(), shape.dim());
    mix(shape.index(0, 0), shape.index(0, 0)) = 0.5;
    mix(shape.index(1, 1), shape.index(1, 1)) = 0.5;
    red = partial_trace_photon(DensityMatrix(shape, mix));
    CHECK(std::abs(red.entries(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(red.entries(1, 1) - 0.5) < 1e-15);

    // entangled state: off-diagonals vanish
    VectorXc bell = VectorXc::Zero(shape.dim());
    bell(shape.index(0, 0)) = 1 / std::sqrt(2.0);
    bell(shape.index(1, 1)) = 1 / std::sqrt(2.0);
    red = partial_trace_photon(DensityMatrix(shape, bell * bell.adjoint()));
    CHECK(std::abs(red.entries(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(red.entries(1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(red.entries(0, 1)) < 1e-14);
    CHECK(std::abs(red.entries.trace().real() - 1.0) < 1e-12);
    CHECK((red.entries - red.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("space shape validation") {
    CHECK_THROWS_AS(SpaceShape(4, 8), std::invalid_argument);
    CHECK_THROWS_AS(SpaceShape(2, 1), std::invalid_argument);
    SpaceShape s(3, 5);
    CHECK(s.dim() == 15);
    CHECK(s.index(2, 4) == 14);
}
