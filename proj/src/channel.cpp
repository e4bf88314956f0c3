#include "kerrloss/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "kerrloss/ode.hpp"

namespace kerrloss {

void ChannelParams::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("ChannelParams: gamma must be > 0");
    if (lambda_tilde < 0.0)
        throw std::invalid_argument("ChannelParams: lambda_tilde must be >= 0");
    if (t < 0.0) throw std::invalid_argument("ChannelParams: t must be >= 0");
}

ChannelParams ChannelParams::from_rescaled(double lambda, double tau, double gamma) {
    ChannelParams cp{gamma, lambda * gamma, tau / gamma};
    cp.validate();
    return cp;
}

ComplexMatrix evolve_coherent_exact(cplx alpha, double lambda, double tau, int dim) {
    if (tau < 0.0) throw std::invalid_argument("evolve_coherent_exact: tau must be >= 0");
    if (lambda < 0.0)
        throw std::invalid_argument("evolve_coherent_exact: lambda must be >= 0");
    const double nbar = std::norm(alpha);
    if (dim < coherent_min_dim(nbar))
        throw std::invalid_argument("evolve_coherent_exact: dim below the leakage policy");

    // f_p = alpha^p / sqrt(p!) by recurrence.
    std::vector<cplx> f(dim);
    f[0] = 1.0;
    for (int p = 0; p + 1 < dim; ++p)
        f[p + 1] = f[p] * alpha / std::sqrt(static_cast<double>(p + 1));

    ComplexMatrix rho(dim);
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q <= p; ++q) {
            const cplx delta(1.0, 2.0 * lambda * (p - q));
            const cplx expo = -0.5 * (p + q) * delta * tau -
                              nbar * (1.0 - (1.0 - std::exp(-delta * tau)) / delta);
            const cplx v = f[p] * std::conj(f[q]) * std::exp(expo);
            rho(p, q) = v;
            rho(q, p) = std::conj(v);
        }
    }
    return rho;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double lambda) {
    const int dim = rho.dim();
    ComplexMatrix out(dim);
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            const double pp = p, qq = q;
            cplx v = -(cplx(0.0, lambda * (pp * pp - qq * qq)) + 0.5 * (pp + qq)) *
                     rho(p, q);
            if (p + 1 < dim && q + 1 < dim)
                v += std::sqrt((1.0 + pp) * (1.0 + qq)) * rho(p + 1, q + 1);
            out(p, q) = v;
        }
    }
    return out;
}

ComplexMatrix evolve_ode(const FockVector& psi0, double lambda, double tau, double tol) {
    ComplexMatrix rho0 = outer(psi0);
    if (tau == 0.0) return rho0;
    auto rhs = [lambda](double, const ComplexMatrix& y) { return lindblad_rhs(y, lambda); };
    ComplexMatrix rho = integrate_ode(rhs, rho0, tau, tol);
    const double drift = std::abs(rho.trace() - cplx(1.0, 0.0) * norm_squared(psi0));
    if (drift > 10.0 * tol)
        throw std::runtime_error("evolve_ode: trace drift beyond 10*tol");
    return rho;
}

ComplexMatrix evolve_probe_rescaled(const ProbeSpec& p, double lambda, double tau,
                                    int dim, double tol) {
    if (p.kind == ProbeKind::Coherent)
        return evolve_coherent_exact(p.alpha, lambda, tau, dim);
    return evolve_ode(make_state(p, dim), lambda, tau, tol);
}

ComplexMatrix evolve_probe(const ProbeSpec& p, const ChannelParams& cp, int dim,
                           double tol) {
    cp.validate();
    return evolve_probe_rescaled(p, cp.lambda(), cp.tau(), dim, tol);
}

FockVector pure_state_approx(cplx alpha, double lambda, double tau, int dim) {
    const double nbar = std::norm(alpha);
    if (dim < coherent_min_dim(nbar))
        throw std::invalid_argument("pure_state_approx: dim below the leakage policy");
    FockVector psi(dim);
    cplx amp = 1.0;  // alpha^p / sqrt(p!)
    for (int p = 0; p < dim; ++p) {
        const double pp = p;
        const cplx phase(-0.5 * pp * tau,
                         -lambda * pp * pp * tau - lambda * nbar * pp * tau * tau);
        psi[p] = amp * std::exp(phase);
        amp *= alpha / std::sqrt(pp + 1.0);
    }
    const double nrm = std::sqrt(norm_squared(psi));
    for (cplx& v : psi) v /= nrm;
    return psi;
}

double fidelity(const FockVector& psi, const ComplexMatrix& rho) {
    const int dim = rho.dim();
    if (static_cast<int>(psi.size()) != dim)
        throw std::invalid_argument("fidelity: dim mismatch");
    cplx s = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += std::conj(psi[i]) * rho(i, j) * psi[j];
    return s.real();
}

double purity(const ComplexMatrix& rho) {
    // tr(rho^2) for Hermitian rho.
    double s = 0.0;
    const int dim = rho.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += (rho(i, j) * rho(j, i)).real();
    return s;
}

}  // namespace kerrloss
