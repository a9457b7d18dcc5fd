#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "omsynth/types.hpp"

namespace oms {

/// Phonon lowering operator b on the truncated space, <n-1|b|n> = sqrt(n).
template <typename Real>
MatrixXcT<Real> phonon_lowering(int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("phonon_lowering: cutoff must be >= 2");
    MatrixXcT<Real> b = MatrixXcT<Real>::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) b(n - 1, n) = std::sqrt(Real(n));
    return b;
}

/// Photon lowering operator on 2 levels (sigma_-) or 3 levels
/// (|g><e| + sqrt(2)|e><e'|, the truncated harmonic ladder).
template <typename Real>
MatrixXcT<Real> photon_lowering(int levels) {
    if (levels != 2 && levels != 3) throw std::invalid_argument("photon_lowering: levels must be 2 or 3");
    MatrixXcT<Real> a = MatrixXcT<Real>::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(Real(n));
    return a;
}

/// exp(eta (b^dag - b)) on the truncated phonon space. The truncated generator
/// stays anti-Hermitian, so the result is unitary up to the accuracy of the
/// scaling-and-squaring exponential.
template <typename Real>
MatrixXcT<Real> displacement(Real eta, int cutoff) {
    MatrixXcT<Real> b = phonon_lowering<Real>(cutoff);
    MatrixXcT<Real> gen = eta * (b.adjoint() - b);
    return gen.exp();
}

template <typename Real>
MatrixXcT<Real> kron(const MatrixXcT<Real>& a, const MatrixXcT<Real>& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

/// Lift single-subsystem operators onto the composite space (photon-major).
inline MatrixXc lift_photon(const MatrixXc& op, const SpaceShape& shape) {
    if (op.rows() != shape.photon_levels)
        throw std::invalid_argument("lift_photon: operator does not match photon levels");
    return kron<double>(op, MatrixXc::Identity(shape.phonon_cutoff, shape.phonon_cutoff));
}

inline MatrixXc lift_phonon(const MatrixXc& op, const SpaceShape& shape) {
    if (op.rows() != shape.phonon_cutoff)
        throw std::invalid_argument("lift_phonon: operator does not match phonon cutoff");
    return kron<double>(MatrixXc::Identity(shape.photon_levels, shape.photon_levels), op);
}

/// Polaron-dressed operators for the open-system model:
///   a~ = a exp(-eta (b^dag - b)),  b~ = b - eta a^dag a.
/// Both inputs act on the same composite space.
inline std::pair<MatrixXc, MatrixXc> polaron_dress(const MatrixXc& a, const MatrixXc& b, double eta) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("polaron_dress: operator shape mismatch");
    MatrixXc gen = -eta * (b.adjoint() - b);
    MatrixXc a_dressed = a * gen.exp();
    MatrixXc b_dressed = b - eta * (a.adjoint() * a);
    return {std::move(a_dressed), std::move(b_dressed)};
}

/// Trace out the photon subsystem. Hermiticity is enforced by symmetrization.
inline DensityMatrix partial_trace_photon(const DensityMatrix& rho) {
    const int C = rho.shape.phonon_cutoff;
    MatrixXc out = MatrixXc::Zero(C, C);
    for (int l = 0; l < rho.shape.photon_levels; ++l)
        out += rho.entries.block(l * C, l * C, C, C);
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(SpaceShape::phonon_only(C), std::move(out));
}

}  // namespace oms
