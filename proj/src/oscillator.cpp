#include "kerrloss/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrloss {

namespace {
const double kGroundNorm = std::pow(std::numbers::pi, -0.25);
}

std::vector<double> oscillator_wavefunctions(int nmax, double x) {
    if (nmax < 0 || nmax >= 1000)
        throw std::invalid_argument("oscillator_wavefunctions: n out of range");
    std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
    psi[0] = kGroundNorm * std::exp(-0.5 * x * x);
    if (nmax >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int k = 1; k < nmax; ++k) {
        psi[k + 1] = x * std::sqrt(2.0 / (k + 1)) * psi[k] -
                     std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
    }
    return psi;
}

double oscillator_wavefunction(int n, double x) {
    return oscillator_wavefunctions(n, x)[static_cast<std::size_t>(n)];
}

}  // namespace kerrloss
