#pragma once

#include "kerrloss/complex_matrix.hpp"
#include "kerrloss/states.hpp"

namespace kerrloss {

/// Physical channel parameters (loss rate gamma, Kerr coupling lambda_tilde,
/// interaction time t) and their loss-rescaled forms tau = gamma t,
/// lambda = lambda_tilde / gamma.
struct ChannelParams {
    double gamma = 1.0;
    double lambda_tilde = 0.0;
    double t = 0.0;

    double tau() const { return gamma * t; }
    double lambda() const { return lambda_tilde / gamma; }

    void validate() const;
    static ChannelParams from_rescaled(double lambda, double tau, double gamma = 1.0);
};

/// Closed-form evolved density matrix for a coherent probe:
/// rho_pq = a^p conj(a)^q / sqrt(p! q!)
///          exp{ -(p+q) D tau / 2 - |a|^2 [1 - (1 - e^{-D tau}) / D] },
/// D = 1 + 2 i lambda (p - q).
ComplexMatrix evolve_coherent_exact(cplx alpha, double lambda, double tau, int dim);

/// Elementwise master-equation right-hand side in rescaled time:
/// d rho_pq / d tau = -[i lambda (p^2-q^2) + (p+q)/2] rho_pq
///                    + sqrt((1+p)(1+q)) rho_{p+1,q+1},
/// with the in-flow term dropped at the truncation boundary.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double lambda);

/// Numerical propagation of |psi0><psi0| to rescaled time tau.
ComplexMatrix evolve_ode(const FockVector& psi0, double lambda, double tau,
                         double tol = 1e-10);

/// Evolve a probe through the channel: closed form for coherent probes,
/// ODE integration otherwise.
ComplexMatrix evolve_probe(const ProbeSpec& p, const ChannelParams& cp, int dim,
                           double tol = 1e-10);
ComplexMatrix evolve_probe_rescaled(const ProbeSpec& p, double lambda, double tau,
                                    int dim, double tol = 1e-10);

/// Small-lambda pure-state approximation for a coherent probe, returned
/// normalized: psi_p ~ a^p/sqrt(p!) exp{-p tau/2 - i lambda p^2 tau
/// - i lambda |a|^2 p tau^2}.
FockVector pure_state_approx(cplx alpha, double lambda, double tau, int dim);

/// <psi|rho|psi>
double fidelity(const FockVector& psi, const ComplexMatrix& rho);

double purity(const ComplexMatrix& rho);

}  // namespace kerrloss
