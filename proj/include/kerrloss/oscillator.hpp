#pragma once

#include <vector>

namespace kerrloss {

/// Normalized harmonic-oscillator position eigenfunction <x|n> in the
/// x = (a + a^dag)/sqrt(2) convention: psi_0(x)^2 = exp(-x^2)/sqrt(pi).
/// Evaluated by the stable three-term recurrence; n must be < 1000.
double oscillator_wavefunction(int n, double x);

/// psi_0(x) .. psi_nmax(x) in one sweep of the recurrence.
std::vector<double> oscillator_wavefunctions(int nmax, double x);

}  // namespace kerrloss
