#include "kerrloss/metrology.hpp"

#include <cmath>
#include <stdexcept>

#include "kerrloss/eig.hpp"
#include "kerrloss/numerics.hpp"
#include "kerrloss/ode.hpp"
#include "kerrloss/oscillator.hpp"
#include "kerrloss/parallel.hpp"

namespace kerrloss {

double default_gamma_step(double gamma) { return 1e-5 * std::max(1.0, gamma); }

namespace {

// The +- stencil states are differenced, so their own integration error is
// amplified by 1/(2h); integrate them tighter than the requested tol.
double stencil_tol(double tol) { return std::max(1e-13, 1e-2 * tol); }

ComplexMatrix dgamma_from_evolver(
    const std::function<ComplexMatrix(double lambda, double tau)>& evolve,
    const ChannelParams& cp, double h) {
    cp.validate();
    const double delta = h / cp.gamma;
    const double tau = cp.tau(), lambda = cp.lambda();
    ComplexMatrix plus = evolve(lambda / (1.0 + delta), tau * (1.0 + delta));
    ComplexMatrix minus = evolve(lambda / (1.0 - delta), tau * (1.0 - delta));
    ComplexMatrix d = (plus - minus) * (1.0 / (2.0 * h));
    if (std::abs(d.trace()) > 1e-8)
        throw std::runtime_error("dgamma_rho: derivative is not traceless");
    return d;
}

}  // namespace

ComplexMatrix dgamma_rho(const ProbeSpec& p, const ChannelParams& cp, double h,
                         int dim, double tol) {
    const double itol = stencil_tol(tol);
    return dgamma_from_evolver(
        [&](double lambda, double tau) {
            return evolve_probe_rescaled(p, lambda, tau, dim, itol);
        },
        cp, h);
}

ComplexMatrix dgamma_rho(const ProbeSpec& p, const ChannelParams& cp) {
    return dgamma_rho(p, cp, default_gamma_step(cp.gamma), required_dim(p));
}

ComplexMatrix dgamma_rho_state(const FockVector& psi0, const ChannelParams& cp,
                               double h, double tol) {
    const double itol = stencil_tol(tol);
    return dgamma_from_evolver(
        [&](double lambda, double tau) { return evolve_ode(psi0, lambda, tau, itol); },
        cp, h);
}

double qfi_mixed(const ComplexMatrix& rho, const ComplexMatrix& drho) {
    if (rho.dim() != drho.dim()) throw std::invalid_argument("qfi_mixed: dim mismatch");
    if (drho.hermiticity_error() > 1e-8 * std::max(1.0, drho.max_abs()))
        throw std::invalid_argument("qfi_mixed: drho not Hermitian");
    const EigenSystem es = eig_hermitian(rho);  // rejects non-Hermitian rho
    const ComplexMatrix a =
        matmul(es.eigenvectors.adjoint(), matmul(drho, es.eigenvectors));
    const int n = rho.dim();
    constexpr double eps = 1e-12;  // numerically null eigenvalue pairs
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const double denom = es.eigenvalues[m] + es.eigenvalues[k];
            if (denom > eps) sum += std::norm(a(m, k)) / denom;
        }
    }
    return 2.0 * sum;
}

double qfi_pure(const FockVector& psi, const FockVector& dpsi) {
    const cplx dd = inner(dpsi, dpsi);
    const cplx dp = inner(dpsi, psi);
    const cplx pd = inner(psi, dpsi);
    const cplx printed = dd + dp * dp + pd * pd + cplx(std::norm(dp), 0.0);
    const double value = 4.0 * printed.real();
    const double alt = 4.0 * (dd.real() - std::norm(pd));
    if (std::abs(value - alt) > 1e-8 * std::max(1.0, std::abs(value)))
        throw std::runtime_error(
            "qfi_pure: printed form disagrees with the projective form");
    return value;
}

QFIResult qfi_numeric_at_dim(const ProbeSpec& p, const ChannelParams& cp, int dim,
                             double tol) {
    cp.validate();
    const double h = default_gamma_step(cp.gamma);
    const ComplexMatrix rho =
        evolve_probe_rescaled(p, cp.lambda(), cp.tau(), dim, stencil_tol(tol));
    const ComplexMatrix drho = dgamma_rho(p, cp, h, dim, tol);
    QFIResult out;
    out.value = qfi_mixed(rho, drho);
    out.qsnr = cp.gamma * cp.gamma * out.value;
    out.method = QFIMethod::EigenNumeric;
    out.dim = dim;
    out.h = h;
    return out;
}

QFIResult qfi_numeric(const ProbeSpec& p, const ChannelParams& cp) {
    return qfi_numeric_at_dim(p, cp, required_dim(p));
}

QFIResult qfi_numeric_state(const FockVector& psi0, const ChannelParams& cp,
                            double tol) {
    cp.validate();
    const double h = default_gamma_step(cp.gamma);
    const ComplexMatrix rho =
        evolve_ode(psi0, cp.lambda(), cp.tau(), stencil_tol(tol));
    const ComplexMatrix drho = dgamma_rho_state(psi0, cp, h, tol);
    QFIResult out;
    out.value = qfi_mixed(rho, drho);
    out.qsnr = cp.gamma * cp.gamma * out.value;
    out.method = QFIMethod::EigenNumeric;
    out.dim = static_cast<int>(psi0.size());
    out.h = h;
    return out;
}

std::vector<double> qfi_numeric_state_path(const FockVector& psi0, double lambda,
                                           double gamma, const std::vector<double>& taus,
                                           double tol) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("qfi_numeric_state_path: gamma must be > 0");
    const double h = default_gamma_step(gamma);
    const double delta = h / gamma;
    const double itol = stencil_tol(tol);
    const ComplexMatrix rho0 = outer(psi0);

    // One trajectory per stencil leg: the center state and the two
    // gamma-shifted legs share a fixed rescaled nonlinearity each, so the
    // whole tau scan is three integration passes instead of 3 * |taus|.
    const auto trajectory = [&](double lam, double scale) {
        std::vector<double> ts(taus);
        for (double& t : ts) t *= scale;
        return integrate_ode_path(
            [lam](double, const ComplexMatrix& r) { return lindblad_rhs(r, lam); },
            rho0, ts, itol);
    };
    const auto center = trajectory(lambda, 1.0);
    const auto plus = trajectory(lambda / (1.0 + delta), 1.0 + delta);
    const auto minus = trajectory(lambda / (1.0 - delta), 1.0 - delta);

    std::vector<double> out(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const ComplexMatrix drho = (plus[i] - minus[i]) * (1.0 / (2.0 * h));
        if (std::abs(drho.trace()) > 1e-8)
            throw std::runtime_error("qfi_numeric_state_path: derivative not traceless");
        out[i] = qfi_mixed(center[i], drho);
    }
    return out;
}

double qfi_coherent_analytic(double nbar, double gamma, double tau) {
    return nbar / (gamma * gamma) * tau * tau * std::exp(-tau);
}

double qfi_squeezed_analytic(double nbar, double gamma, double tau) {
    if (tau == 0.0) return 0.0;  // removable singularity
    const double et = std::exp(tau);
    const double e2t = et * et;
    const double num = (-2.0 * et + e2t + 2.0) * tau * tau * nbar;
    const double den =
        gamma * gamma * (et - 1.0) * (2.0 * et * nbar - 2.0 * nbar + e2t);
    return num / den;
}

double qfi_fock_analytic(double nbar, double gamma, double tau) {
    if (tau == 0.0) return 0.0;
    return nbar * tau * tau / (gamma * gamma * (std::exp(tau) - 1.0));
}

double qfi_pure_approx_analytic(cplx alpha, double lambda, double gamma, double tau) {
    const double nbar = std::norm(alpha);
    return nbar / (gamma * gamma) * tau * tau * std::exp(-tau) *
           (1.0 + 4.0 * lambda * lambda * tau * tau * nbar * nbar);
}

MeasurementFI fi_photon_counting_at_dim(const ProbeSpec& p, const ChannelParams& cp,
                                        int dim, double tol) {
    const ComplexMatrix rho =
        evolve_probe_rescaled(p, cp.lambda(), cp.tau(), dim, stencil_tol(tol));
    const ComplexMatrix drho = dgamma_rho(p, cp, default_gamma_step(cp.gamma), dim, tol);
    double fi = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double pk = rho(k, k).real();
        if (pk > 1e-14) {
            const double dk = drho(k, k).real();
            fi += dk * dk / pk;
        }
    }
    return MeasurementFI{MeasurementKind::PhotonCounting, fi, 0.0, true};
}

MeasurementFI fi_photon_counting(const ProbeSpec& p, const ChannelParams& cp) {
    return fi_photon_counting_at_dim(p, cp, required_dim(p));
}

namespace {

// Real quadratic form u+ M u for Hermitian M, using the pairing so the
// result is exactly real.
double quad_form(const ComplexMatrix& m, const std::vector<cplx>& u) {
    const int n = m.dim();
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
        s += std::norm(u[p]) * m(p, p).real();
        for (int q = p + 1; q < n; ++q)
            s += 2.0 * (std::conj(u[p]) * m(p, q) * u[q]).real();
    }
    return s;
}

std::vector<cplx> phase_rotated_wavefunctions(int dim, double phase, double x) {
    const std::vector<double> psi = oscillator_wavefunctions(dim - 1, x);
    std::vector<cplx> u(dim);
    for (int q = 0; q < dim; ++q) u[q] = std::polar(psi[q], phase * q);
    return u;
}

double quadrature_halfwidth(int dim) { return 6.0 + std::sqrt(2.0 * dim); }

}  // namespace

double homodyne_distribution(const ComplexMatrix& rho, double phase, double x) {
    const double p = quad_form(rho, phase_rotated_wavefunctions(rho.dim(), phase, x));
    if (p < -1e-10)
        throw std::runtime_error(
            "homodyne_distribution: negative density, truncated state inconsistent");
    return p;
}

double fi_quadrature_rho(const ComplexMatrix& rho, const ComplexMatrix& drho,
                         double phase, int points) {
    const int dim = rho.dim();
    const double half = quadrature_halfwidth(dim);
    const double dx = 2.0 * half / (points - 1);
    std::vector<double> integrand(points);
    parallel_for(points, [&](std::int64_t i) {
        const double x = -half + static_cast<double>(i) * dx;
        const std::vector<cplx> u = phase_rotated_wavefunctions(dim, phase, x);
        const double p = quad_form(rho, u);
        if (p < 1e-12) {  // excluded tail, avoids 0/0
            integrand[i] = 0.0;
            return;
        }
        const double dp = quad_form(drho, u);
        integrand[i] = dp * dp / p;
    });
    return trapezoid(integrand, dx);
}

MeasurementFI fi_quadrature_at_dim(const ProbeSpec& p, const ChannelParams& cp,
                                   double phase, int dim, double tol) {
    const ComplexMatrix rho =
        evolve_probe_rescaled(p, cp.lambda(), cp.tau(), dim, stencil_tol(tol));
    const ComplexMatrix drho = dgamma_rho(p, cp, default_gamma_step(cp.gamma), dim, tol);
    const double coarse = fi_quadrature_rho(rho, drho, phase, 4001);
    const double fine = fi_quadrature_rho(rho, drho, phase, 8001);
    MeasurementFI out{MeasurementKind::Quadrature, fine, phase, true};
    if (std::abs(fine - coarse) > 1e-4 * std::max(std::abs(fine), 1e-12))
        out.converged = false;
    return out;
}

MeasurementFI fi_quadrature(const ProbeSpec& p, const ChannelParams& cp, double phase) {
    return fi_quadrature_at_dim(p, cp, phase, required_dim(p));
}

MeasurementFI optimize_quadrature_phase_at_dim(const ProbeSpec& p,
                                               const ChannelParams& cp, int dim,
                                               double tol) {
    const ComplexMatrix rho =
        evolve_probe_rescaled(p, cp.lambda(), cp.tau(), dim, stencil_tol(tol));
    const ComplexMatrix drho = dgamma_rho(p, cp, default_gamma_step(cp.gamma), dim, tol);
    const ScalarMax best = maximize_scalar(
        [&](double phase) { return fi_quadrature_rho(rho, drho, phase, 4001); }, 0.0,
        std::numbers::pi, 1e-4);
    const double fine = fi_quadrature_rho(rho, drho, best.x, 8001);
    MeasurementFI out{MeasurementKind::Quadrature, fine, best.x, true};
    if (std::abs(fine - best.value) > 1e-4 * std::max(std::abs(fine), 1e-12))
        out.converged = false;
    return out;
}

MeasurementFI optimize_quadrature_phase(const ProbeSpec& p, const ChannelParams& cp) {
    return optimize_quadrature_phase_at_dim(p, cp, required_dim(p));
}

}  // namespace kerrloss
