#include "kerrloss/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kerrloss {

ProbeSpec ProbeSpec::coherent(cplx alpha) {
    ProbeSpec p;
    p.kind = ProbeKind::Coherent;
    p.alpha = alpha;
    return p;
}

ProbeSpec ProbeSpec::squeezed(double s) {
    ProbeSpec p;
    p.kind = ProbeKind::SqueezedVacuum;
    p.r = s;
    return p;
}

ProbeSpec ProbeSpec::squeezed_nbar(double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("squeezed_nbar: nbar must be >= 0");
    return squeezed(std::asinh(std::sqrt(nbar)));
}

ProbeSpec ProbeSpec::fock(int n) {
    if (n < 0) throw std::invalid_argument("fock: n must be >= 0");
    ProbeSpec p;
    p.kind = ProbeKind::Fock;
    p.n = n;
    return p;
}

ProbeSpec ProbeSpec::qutrit(double nbar, double phi, double mu, double nu) {
    ProbeSpec p;
    p.kind = ProbeKind::Qutrit;
    p.nbar_qutrit = nbar;
    p.phi = phi;
    p.mu = mu;
    p.nu = nu;
    return p;
}

double ProbeSpec::mean_energy() const {
    switch (kind) {
        case ProbeKind::Coherent: return std::norm(alpha);
        case ProbeKind::SqueezedVacuum: {
            const double s = std::sinh(r);
            return s * s;
        }
        case ProbeKind::Fock: return static_cast<double>(n);
        case ProbeKind::Qutrit: return nbar_qutrit;
    }
    return 0.0;
}

std::string ProbeSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case ProbeKind::Coherent:
            os << "coherent(alpha=" << alpha.real();
            if (alpha.imag() != 0.0) os << (alpha.imag() < 0 ? "" : "+") << alpha.imag() << "i";
            os << ")";
            break;
        case ProbeKind::SqueezedVacuum: os << "squeezed(s=" << r << ")"; break;
        case ProbeKind::Fock: os << "fock(n=" << n << ")"; break;
        case ProbeKind::Qutrit:
            os << "qutrit(nbar=" << nbar_qutrit << ",phi=" << phi << ")";
            break;
    }
    return os.str();
}

int coherent_min_dim(double nbar) {
    return static_cast<int>(std::ceil(nbar + 8.0 * std::sqrt(nbar + 1.0) + 10.0));
}

FockVector coherent_state(cplx alpha, int dim) {
    if (dim <= 0) throw std::invalid_argument("coherent_state: dim must be positive");
    const double nbar = std::norm(alpha);
    if (dim < coherent_min_dim(nbar))
        throw std::invalid_argument("coherent_state: dim below the leakage policy, need >= " +
                                    std::to_string(coherent_min_dim(nbar)));
    FockVector psi(dim);
    psi[0] = std::exp(-0.5 * nbar);
    for (int n = 0; n + 1 < dim; ++n)
        psi[n + 1] = psi[n] * alpha / std::sqrt(static_cast<double>(n + 1));
    return psi;
}

namespace {

// |c_{2m}|^2 sequence of the squeezed vacuum, by ratio recurrence.
// c_{2m+2}/c_{2m} = -tanh(s) sqrt((2m+1)/(2m+2)).
double squeezed_tail_weight(double s, int dim) {
    const double th2 = std::tanh(s) * std::tanh(s);
    double w = 1.0 / std::cosh(s);  // |c_0|^2
    double total = 0.0;
    for (int m = 0; 2 * m < dim; ++m) {
        total += w;
        w *= th2 * (2.0 * m + 1.0) / (2.0 * m + 2.0);
    }
    return 1.0 - total;
}

}  // namespace

FockVector squeezed_vacuum(double s, int dim) {
    if (dim <= 0) throw std::invalid_argument("squeezed_vacuum: dim must be positive");
    if (squeezed_tail_weight(std::abs(s), dim) > 1e-8)
        throw std::invalid_argument("squeezed_vacuum: dim too small, leakage above 1e-8");
    FockVector psi(dim);
    psi[0] = std::sqrt(1.0 / std::cosh(s));
    const double th = std::tanh(s);
    for (int m = 0; 2 * (m + 1) < dim; ++m)
        psi[2 * m + 2] =
            psi[2 * m] * (-th) * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
    return psi;
}

FockVector fock_state(int n, int dim) {
    if (n < 0) throw std::invalid_argument("fock_state: n must be >= 0");
    if (n >= dim) throw std::invalid_argument("fock_state: n must be < dim");
    FockVector psi(dim);
    psi[static_cast<std::size_t>(n)] = 1.0;
    return psi;
}

FockVector qutrit_state(double nbar, double phi, double mu, double nu, int dim) {
    if (dim < 3) throw std::invalid_argument("qutrit_state: dim must be >= 3");
    const double arg = 2.0 * nbar / (3.0 + std::cos(2.0 * phi));
    if (arg > 1.0)
        throw std::invalid_argument("qutrit_state: arcsin argument above 1");
    const double theta = std::asin(std::sqrt(arg));
    FockVector psi(dim);
    psi[0] = std::cos(theta);
    psi[1] = std::polar(std::sin(theta) * std::sin(phi), mu);
    psi[2] = std::polar(std::sin(theta) * std::cos(phi), nu);
    return psi;
}

FockVector make_state(const ProbeSpec& p, int dim) {
    switch (p.kind) {
        case ProbeKind::Coherent: return coherent_state(p.alpha, dim);
        case ProbeKind::SqueezedVacuum: return squeezed_vacuum(p.r, dim);
        case ProbeKind::Fock: return fock_state(p.n, dim);
        case ProbeKind::Qutrit:
            return qutrit_state(p.nbar_qutrit, p.phi, p.mu, p.nu, dim);
    }
    throw std::invalid_argument("make_state: unknown probe kind");
}

double mean_photon_number(const FockVector& psi) {
    double s = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n) s += static_cast<double>(n) * std::norm(psi[n]);
    return s;
}

double mean_photon_number(const ComplexMatrix& rho) {
    double s = 0.0;
    for (int n = 0; n < rho.dim(); ++n) s += static_cast<double>(n) * rho(n, n).real();
    return s;
}

double leakage(const FockVector& psi) { return 1.0 - norm_squared(psi); }

int leakage_dim(const ProbeSpec& p, int dim_cap) {
    switch (p.kind) {
        case ProbeKind::Fock: return p.n + 1;
        case ProbeKind::Qutrit: return 3;
        case ProbeKind::Coherent: {
            int dim = coherent_min_dim(std::norm(p.alpha));
            while (dim <= dim_cap) {
                if (leakage(coherent_state(p.alpha, dim)) <= 1e-8) return dim;
                ++dim;
            }
            break;
        }
        case ProbeKind::SqueezedVacuum: {
            for (int dim = 1; dim <= dim_cap; ++dim) {
                if (squeezed_tail_weight(std::abs(p.r), dim) <= 1e-8) return dim;
            }
            break;
        }
    }
    throw std::runtime_error("leakage_dim: cap " + std::to_string(dim_cap) +
                             " exceeded; lower the probe energy");
}

}  // namespace kerrloss
