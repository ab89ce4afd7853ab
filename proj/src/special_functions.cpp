#include "dpsim/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpsim/errors.hpp"

namespace dpsim {
namespace {

using cplx = std::complex<double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

void require_finite(cplx z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << who << ": non-finite argument " << z;
        throw DomainError(msg.str());
    }
}

// Right half-plane, Re z >= 1/2.
cplx log_gamma_lanczos(cplx z) {
    const cplx zm1 = z - 1.0;
    cplx series{kLanczosCoeff[0]};
    for (std::size_t k = 1; k < kLanczosCoeff.size(); ++k)
        series += kLanczosCoeff[k] / (zm1 + static_cast<double>(k));
    const cplx t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

} // namespace

cplx log_gamma(cplx z) {
    require_finite(z, "log_gamma");
    if (is_pole(z)) {
        std::ostringstream msg;
        msg << "gamma pole at z = " << z.real();
        throw DomainError(msg.str());
    }
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_lanczos(1.0 - z);
    }
    return log_gamma_lanczos(z);
}

cplx complex_gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx gamma_ratio_rz(double alpha, double tau, double delta0_tau) {
    const cplx z0{0.5, -0.5 * alpha * tau};
    const cplx zm = z0 - 0.5 * delta0_tau;
    const cplx zp = z0 + 0.5 * delta0_tau;
    for (const cplx& z : {z0, zm, zp}) {
        if (is_pole(z)) {
            std::ostringstream msg;
            msg << "gamma_ratio_rz: gamma pole at argument " << z.real() << (z.imag() < 0 ? " - " : " + ")
                << std::abs(z.imag()) << "i (alpha=" << alpha << ", tau=" << tau
                << ", delta0*tau=" << delta0_tau << ")";
            throw DomainError(msg.str());
        }
    }
    const cplx log_ratio = 2.0 * log_gamma(z0) - log_gamma(zm) - log_gamma(zp);
    return std::exp(log_ratio + cplx{0.0, -0.5 * alpha * std::numbers::pi});
}

} // namespace dpsim
