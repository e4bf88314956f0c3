#include "kerrloss/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kerrloss {
namespace {

void axpy(double a, const ComplexMatrix& x, ComplexMatrix& y) {
    const cplx* xs = x.data();
    cplx* ys = y.data();
    const std::size_t n = y.size();
    for (std::size_t k = 0; k < n; ++k) ys[k] += a * xs[k];
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
constexpr double e7 = -1.0 / 40.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

// Advance (tau, y) to tau_target, keeping the FSAL derivative k1 and the
// step size h alive across calls so a path query costs one trajectory.
void advance(const OdeRhs& rhs, double& tau, ComplexMatrix& y, ComplexMatrix& k1,
             double& h, double tau_target, double tol) {
    while (tau < tau_target) {
        if (h < 1e-14)
            throw std::runtime_error("integrate_ode: step underflow at tau = " +
                                     std::to_string(tau));
        h = std::min(h, tau_target - tau);

        ComplexMatrix w = y;
        axpy(h * a21, k1, w);
        ComplexMatrix k2 = rhs(tau + c2 * h, w);

        w = y;
        axpy(h * a31, k1, w);
        axpy(h * a32, k2, w);
        ComplexMatrix k3 = rhs(tau + c3 * h, w);

        w = y;
        axpy(h * a41, k1, w);
        axpy(h * a42, k2, w);
        axpy(h * a43, k3, w);
        ComplexMatrix k4 = rhs(tau + c4 * h, w);

        w = y;
        axpy(h * a51, k1, w);
        axpy(h * a52, k2, w);
        axpy(h * a53, k3, w);
        axpy(h * a54, k4, w);
        ComplexMatrix k5 = rhs(tau + c5 * h, w);

        w = y;
        axpy(h * a61, k1, w);
        axpy(h * a62, k2, w);
        axpy(h * a63, k3, w);
        axpy(h * a64, k4, w);
        axpy(h * a65, k5, w);
        ComplexMatrix k6 = rhs(tau + h, w);

        ComplexMatrix ynew = y;
        axpy(h * b1, k1, ynew);
        axpy(h * b3, k3, ynew);
        axpy(h * b4, k4, ynew);
        axpy(h * b5, k5, ynew);
        axpy(h * b6, k6, ynew);
        ComplexMatrix k7 = rhs(tau + h, ynew);  // FSAL

        double err = 0.0;
        {
            const cplx *p1 = k1.data(), *p3 = k3.data(), *p4 = k4.data(),
                       *p5 = k5.data(), *p6 = k6.data(), *p7 = k7.data();
            const cplx *py = y.data(), *pn = ynew.data();
            const std::size_t sz = y.size();
            for (std::size_t i = 0; i < sz; ++i) {
                const cplx le = h * (e1 * p1[i] + e3 * p3[i] + e4 * p4[i] +
                                     e5 * p5[i] + e6 * p6[i] + e7 * p7[i]);
                const double sc =
                    tol * (1.0 + std::max(std::abs(py[i]), std::abs(pn[i])));
                err = std::max(err, std::abs(le) / sc);
            }
        }

        if (err <= 1.0) {
            tau += h;
            y = std::move(ynew);
            k1 = std::move(k7);
        }
        const double factor =
            (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h *= factor;
    }
}

void validate_tol(double tol) {
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("integrate_ode: tol must lie in (0, 1e-3]");
}

}  // namespace

ComplexMatrix integrate_ode(const OdeRhs& rhs, const ComplexMatrix& y0,
                            double tau_end, double tol) {
    if (!(tau_end >= 0.0)) throw std::invalid_argument("integrate_ode: tau_end must be >= 0");
    validate_tol(tol);
    if (tau_end == 0.0) return y0;

    double tau = 0.0;
    ComplexMatrix y = y0;
    ComplexMatrix k1 = rhs(tau, y);
    double h = std::min(tau_end, 0.1 / (1.0 + k1.max_abs()));
    advance(rhs, tau, y, k1, h, tau_end, tol);
    return y;
}

std::vector<ComplexMatrix> integrate_ode_path(const OdeRhs& rhs,
                                              const ComplexMatrix& y0,
                                              const std::vector<double>& taus,
                                              double tol) {
    validate_tol(tol);
    if (taus.empty()) return {};
    if (!(taus.front() >= 0.0))
        throw std::invalid_argument("integrate_ode_path: taus must be >= 0");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] > taus[i - 1]))
            throw std::invalid_argument("integrate_ode_path: taus must ascend");

    std::vector<ComplexMatrix> out;
    out.reserve(taus.size());
    double tau = 0.0;
    ComplexMatrix y = y0;
    ComplexMatrix k1 = rhs(tau, y);
    double h = std::min(std::max(taus.back(), 1e-3), 0.1 / (1.0 + k1.max_abs()));
    for (double target : taus) {
        advance(rhs, tau, y, k1, h, target, tol);
        out.push_back(y);
    }
    return out;
}

}  // namespace kerrloss
