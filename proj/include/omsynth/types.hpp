#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace oms {

template <typename Real>
using MatrixXcT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorXcT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Real = double;
using Complex = std::complex<double>;
using MatrixXc = MatrixXcT<double>;
using VectorXc = VectorXcT<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default truncation margin above the highest populated Fock level.
inline constexpr int kCutoffMargin = 6;

/// Truncated photon x phonon product space. Photon-major layout:
/// index = photon_level * phonon_cutoff + n, so each photon sector is a
/// contiguous block of phonon amplitudes.
struct SpaceShape {
    int photon_levels = 2;  // 2 (g,e) or 3 (g,e,e')
    int phonon_cutoff = 2;  // Fock states 0..phonon_cutoff-1

    SpaceShape() = default;
    SpaceShape(int levels, int cutoff) : photon_levels(levels), phonon_cutoff(cutoff) {
        if (levels != 2 && levels != 3)
            throw std::invalid_argument("SpaceShape: photon_levels must be 2 or 3");
        if (cutoff < 2)
            throw std::invalid_argument("SpaceShape: phonon_cutoff must be >= 2");
    }

    /// Single-subsystem shape for reduced phonon states.
    static SpaceShape phonon_only(int cutoff) {
        if (cutoff < 2) throw std::invalid_argument("SpaceShape: phonon_cutoff must be >= 2");
        SpaceShape s;
        s.photon_levels = 1;
        s.phonon_cutoff = cutoff;
        return s;
    }

    int dim() const { return photon_levels * phonon_cutoff; }
    int index(int level, int n) const { return level * phonon_cutoff + n; }
    bool operator==(const SpaceShape&) const = default;
};

/// Normalized state vector on a SpaceShape.
struct Ket {
    SpaceShape shape;
    VectorXc amplitudes;

    Ket() = default;
    Ket(SpaceShape s, VectorXc a) : shape(s), amplitudes(std::move(a)) {
        if (amplitudes.size() != shape.dim())
            throw std::invalid_argument("Ket: amplitude size does not match shape");
    }

    /// Basis state |n, level>.
    static Ket basis(SpaceShape s, int n, int level) {
        VectorXc a = VectorXc::Zero(s.dim());
        a(s.index(level, n)) = 1.0;
        return Ket(s, std::move(a));
    }

    Complex amp(int level, int n) const { return amplitudes(shape.index(level, n)); }
    double norm_error() const { return std::abs(amplitudes.norm() - 1.0); }
};

struct DensityMatrix {
    SpaceShape shape;
    MatrixXc entries;

    DensityMatrix() = default;
    DensityMatrix(SpaceShape s, MatrixXc m) : shape(s), entries(std::move(m)) {
        if (entries.rows() != shape.dim() || entries.cols() != shape.dim())
            throw std::invalid_argument("DensityMatrix: size does not match shape");
    }

    static DensityMatrix pure(const Ket& psi) {
        return DensityMatrix(psi.shape, psi.amplitudes * psi.amplitudes.adjoint());
    }

    double trace_error() const { return std::abs(entries.trace().real() - 1.0) + std::abs(entries.trace().imag()); }
    double hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }
};

inline double wrap_phase(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0) p += kTwoPi;
    // fold values that rounded up to 2*pi back to 0
    if (p >= kTwoPi) p = 0.0;
    return p;
}

}  // namespace oms
