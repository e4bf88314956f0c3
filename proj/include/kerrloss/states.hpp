#pragma once

#include <numbers>
#include <string>

#include "kerrloss/complex_matrix.hpp"

namespace kerrloss {

enum class ProbeKind { Coherent, SqueezedVacuum, Fock, Qutrit };

/// Tagged description of the input probe state. For the squeezed vacuum the
/// stored parameter is the operator argument s of S = exp(s/2 (a^dag2 - a2)),
/// with mean energy sinh^2 s. (The source convention writes the argument as
/// r^2 but reports energies as sinh^2 r; all results here are parametrized by
/// the mean energy, which is unambiguous.)
struct ProbeSpec {
    ProbeKind kind = ProbeKind::Coherent;
    cplx alpha{0.0, 0.0};  // coherent
    double r = 0.0;        // squeezing argument s, nbar = sinh^2 s
    int n = 0;             // fock
    double nbar_qutrit = 0.0;
    double phi = 0.0;
    double mu = std::numbers::pi;
    double nu = std::numbers::pi;

    static ProbeSpec coherent(cplx alpha);
    static ProbeSpec squeezed(double s);
    static ProbeSpec squeezed_nbar(double nbar);  // s = asinh(sqrt(nbar))
    static ProbeSpec fock(int n);
    static ProbeSpec qutrit(double nbar, double phi,
                            double mu = std::numbers::pi,
                            double nu = std::numbers::pi);

    /// Mean input energy nbar implied by the defining parameters.
    double mean_energy() const;
    std::string label() const;
};

/// Poisson amplitudes c_n = exp(-|a|^2/2) a^n / sqrt(n!) by recurrence.
/// Requires dim >= ceil(|a|^2 + 8 sqrt(|a|^2+1) + 10) so truncation leakage
/// stays below 1e-8.
FockVector coherent_state(cplx alpha, int dim);

/// Even-only amplitudes of the squeezed vacuum with argument s (nbar =
/// sinh^2 s). Rejects dims whose truncation leakage exceeds 1e-8.
FockVector squeezed_vacuum(double s, int dim);

FockVector fock_state(int n, int dim);

/// (cos t, e^{i mu} sin t sin phi, e^{i nu} sin t cos phi, 0, ...) with
/// t = arcsin sqrt(2 nbar / (3 + cos 2 phi)); exact norm 1.
FockVector qutrit_state(double nbar, double phi, double mu, double nu, int dim = 3);

FockVector make_state(const ProbeSpec& p, int dim);

double mean_photon_number(const FockVector& psi);
double mean_photon_number(const ComplexMatrix& rho);

/// Truncation leakage 1 - ||psi||^2.
double leakage(const FockVector& psi);

/// Leakage policy floor for coherent states.
int coherent_min_dim(double nbar);

/// Smallest dim with truncation leakage <= 1e-8 for the given probe.
int leakage_dim(const ProbeSpec& p, int dim_cap = 300);

/// Two-tier truncation search: leakage <= 1e-8 and numeric QFI at
/// (lambda=0, gamma=1, tau=1) within 1e-5 relative of the analytic baseline.
/// Throws when the search exceeds dim_cap.
int required_dim(const ProbeSpec& p, int dim_cap = 300);

}  // namespace kerrloss
