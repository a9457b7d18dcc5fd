#pragma once

#include <cmath>
#include <stdexcept>

namespace oms {

/// Effective Rabi frequency Omega_{n,k} of the k-phonon sideband on Fock
/// level n:
///   Omega eta^k e^{-eta^2/2} sqrt((n+k)!/n!)
///     * sum_{j=0}^{n} (-1)^j eta^{2j} n! / (j! (j+k)! (n-j)!).
/// Factorial ratios are accumulated iteratively so n up to a few hundred is
/// safe. The result can be negative at larger eta; callers that need a
/// duration take the magnitude and fold the sign into the drive phase.
template <typename Real>
Real rabi_frequency(Real Omega, Real eta, int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("rabi_frequency: n, k must be >= 0");
    Real pref = Omega * std::exp(-eta * eta / 2);
    for (int i = 0; i < k; ++i) pref *= eta;
    Real ratio = 1;  // (n+k)!/n!
    for (int i = n + 1; i <= n + k; ++i) ratio *= Real(i);
    pref *= std::sqrt(ratio);

    Real term = 1;
    for (int i = 1; i <= k; ++i) term /= Real(i);  // j = 0 term: 1/k!
    Real sum = term;
    for (int j = 1; j <= n; ++j) {
        term *= -eta * eta * Real(n - j + 1) / (Real(j) * Real(j + k));
        sum += term;
    }
    return pref * sum;
}

/// Lamb-Dicke criterion eta sqrt(nbar + 1) <= threshold. The paper only
/// demands "<< 1"; 0.2 keeps single-phonon truncation error at the few
/// percent level and covers the working point eta = 0.1.
inline constexpr double kLambDickeThreshold = 0.2;

template <typename Real>
bool lamb_dicke_ok(Real eta, Real nbar) {
    if (eta < 0 || nbar < 0) throw std::invalid_argument("lamb_dicke_ok: eta, nbar must be >= 0");
    return eta * std::sqrt(nbar + 1) <= Real(kLambDickeThreshold);
}

/// Bose-Einstein occupation 1/(e^{hbar w / kB T} - 1) evaluated at the
/// mechanical frequency; T <= 0 returns the zero-temperature limit.
template <typename Real>
Real thermal_occupation(Real omega_m, Real temperature) {
    if (omega_m <= 0) throw std::invalid_argument("thermal_occupation: omega_m must be > 0");
    constexpr Real hbar = Real(1.054571817e-34);
    constexpr Real kB = Real(1.380649e-23);
    if (temperature <= 0) return 0;
    Real x = hbar * omega_m / (kB * temperature);
    return Real(1) / std::expm1(x);
}

}  // namespace oms
