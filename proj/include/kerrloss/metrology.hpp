#pragma once

#include "kerrloss/channel.hpp"

namespace kerrloss {

enum class QFIMethod { EigenNumeric, PureAnalytic, BaselineFormula };

struct QFIResult {
    double value = 0.0;  // H(gamma)
    double qsnr = 0.0;   // gamma^2 H, gamma-independent for this family
    QFIMethod method = QFIMethod::EigenNumeric;
    int dim = 0;
    double h = 0.0;  // finite-difference step in gamma
};

enum class MeasurementKind { PhotonCounting, Quadrature };

struct MeasurementFI {
    MeasurementKind kind = MeasurementKind::PhotonCounting;
    double value = 0.0;
    double phase = 0.0;      // quadrature only
    bool converged = true;   // quadrature grid-doubling check
};

/// Finite-difference step policy: h = 1e-5 * max(1, gamma).
double default_gamma_step(double gamma);

/// Central difference of rho over gamma at fixed lambda_tilde and t:
/// gamma -> gamma (1 +- d) maps (tau, lambda) -> (tau (1 +- d), lambda / (1 +- d))
/// with d = h / gamma. Differentiating at fixed (lambda, tau) would miss the
/// rescaling and is wrong. Output is traceless within 1e-8.
ComplexMatrix dgamma_rho(const ProbeSpec& p, const ChannelParams& cp, double h,
                         int dim, double tol = 1e-10);
ComplexMatrix dgamma_rho(const ProbeSpec& p, const ChannelParams& cp);

/// Same derivative protocol for an arbitrary pure initial state (ODE route).
ComplexMatrix dgamma_rho_state(const FockVector& psi0, const ChannelParams& cp,
                               double h, double tol = 1e-10);

/// Mixed-state QFI from the spectral decomposition of rho:
/// 2 sum_{n,m} |<psi_m|drho|psi_n>|^2 / (p_n + p_m), pairs with
/// p_n + p_m <= 1e-12 excluded.
double qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Pure-state QFI, evaluated as printed:
/// 4 [<dpsi|dpsi> + <dpsi|psi>^2 + <psi|dpsi>^2 + |<dpsi|psi>|^2];
/// asserts agreement with 4(<dpsi|dpsi> - |<psi|dpsi>|^2) within 1e-8.
double qfi_pure(const FockVector& psi, const FockVector& dpsi);

QFIResult qfi_numeric(const ProbeSpec& p, const ChannelParams& cp);
QFIResult qfi_numeric_at_dim(const ProbeSpec& p, const ChannelParams& cp, int dim,
                             double tol = 1e-10);
QFIResult qfi_numeric_state(const FockVector& psi0, const ChannelParams& cp,
                            double tol = 1e-10);

/// QFI of a pure initial state along an ascending tau grid at fixed
/// (lambda, gamma), sharing one ODE trajectory per stencil leg.
std::vector<double> qfi_numeric_state_path(const FockVector& psi0, double lambda,
                                           double gamma, const std::vector<double>& taus,
                                           double tol = 1e-10);

double qfi_coherent_analytic(double nbar, double gamma, double tau);
double qfi_squeezed_analytic(double nbar, double gamma, double tau);
double qfi_fock_analytic(double nbar, double gamma, double tau);
/// Small-lambda pure-state result: (|a|^2/g^2) tau^2 e^-tau (1 + 4 l^2 tau^2 |a|^4).
double qfi_pure_approx_analytic(cplx alpha, double lambda, double gamma, double tau);

MeasurementFI fi_photon_counting(const ProbeSpec& p, const ChannelParams& cp);
MeasurementFI fi_photon_counting_at_dim(const ProbeSpec& p, const ChannelParams& cp,
                                        int dim, double tol = 1e-10);

/// p(x) = sum_pq e^{i(q-p) phase} rho_pq psi_p(x) psi_q(x); exactly real by
/// Hermitian pairing. Values below -1e-10 signal a truncation or integration
/// inconsistency and are rejected.
double homodyne_distribution(const ComplexMatrix& rho, double phase, double x);

MeasurementFI fi_quadrature(const ProbeSpec& p, const ChannelParams& cp, double phase);
MeasurementFI fi_quadrature_at_dim(const ProbeSpec& p, const ChannelParams& cp,
                                   double phase, int dim, double tol = 1e-10);
/// FI of the quadrature statistics from a precomputed (rho, drho) pair.
double fi_quadrature_rho(const ComplexMatrix& rho, const ComplexMatrix& drho,
                         double phase, int points = 4001);

/// Best quadrature phase over [0, pi) and the FI there.
MeasurementFI optimize_quadrature_phase(const ProbeSpec& p, const ChannelParams& cp);
MeasurementFI optimize_quadrature_phase_at_dim(const ProbeSpec& p,
                                               const ChannelParams& cp, int dim,
                                               double tol = 1e-10);

}  // namespace kerrloss
