#pragma once

#include <complex>

namespace dpsim {

/// Complex gamma function via the Lanczos approximation (g = 7, 9 terms),
/// with the reflection formula for Re z < 1/2. Relative error is below 1e-12
/// for |Im z| <= 50, 0.5 <= Re z <= 50. Throws DomainError at the poles
/// z = 0, -1, -2, ...
std::complex<double> complex_gamma(std::complex<double> z);

/// log Gamma(z). The imaginary part is not reduced to the principal branch;
/// only exp() of sums of these values is meaningful.
std::complex<double> log_gamma(std::complex<double> z);

/// The Cayley-Klein `a` parameter of the Rosen-Zener segment,
///
///   Gamma^2[(1 - i alpha tau)/2] e^{-i alpha pi/2}
///   / ( Gamma[(1 - i alpha tau - dt)/2] Gamma[(1 - i alpha tau + dt)/2] ),
///
/// with dt = Delta0 tau. Evaluated through log-gamma so large |Im| arguments
/// do not overflow. Throws DomainError naming the offending argument.
std::complex<double> gamma_ratio_rz(double alpha, double tau, double delta0_tau);

} // namespace dpsim
