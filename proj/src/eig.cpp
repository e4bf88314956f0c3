#include "kerrloss/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kerrloss {
namespace {

// Unitary Householder reduction of Hermitian a to tridiagonal form.
// On exit the tridiagonal lives in a (real diagonal, complex subdiagonal)
// and q holds the accumulated transformation: a_in = q T q^dag.
void tridiagonalize(ComplexMatrix& a, ComplexMatrix& q) {
    const int n = a.dim();
    std::vector<cplx> v(n), p(n);
    // Columns whose tail is this small are already tridiagonal for any
    // practical purpose; reflecting on them divides by underflowed norms and
    // breeds infs (graded density matrices reach 1e-150 and below).
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = eps * eps * std::max(a.max_abs(), 1e-30);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= tiny) continue;

        const cplx x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0, 0.0);
        const cplx alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (int i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }

        // Two-sided update of the trailing block B <- (I-b vv+) B (I-b vv+):
        // p = b B v, q = p - (b v+p / 2) v, B -= q v+ + v q+.
        for (int i = k + 1; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            p[i] = beta * s;
        }
        cplx vp = 0.0;
        for (int i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        const cplx kappa = 0.5 * beta * vp;
        for (int i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) -= p[i] * std::conj(v[j]) + v[i] * std::conj(p[j]);

        // q <- q (I - b v v+)
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += q(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
        }
    }
}

// Implicit-shift QL on the real symmetric tridiagonal (d, e), rotating the
// complex eigenvector columns of z along. e[i] couples i and i+1; e[n-1] = 0.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    // Absolute deflation floor: without it, couplings between diagonal
    // entries that underflowed to denormals never satisfy the relative test
    // and the sweep spins forever (seen for near-vacuum density matrices).
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
    const double floor_abs = eps * eps * std::max(anorm, 1e-30);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor_abs) break;
            }
            if (m != l) {
                if (iter++ == 64)
                    throw std::runtime_error("eig_hermitian: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pshift = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= pshift;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pshift;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    pshift = s * r;
                    d[i + 1] = g + pshift;
                    g = c * r - b;
                    for (int row = 0; row < n; ++row) {
                        const cplx zf = z(row, i + 1);
                        z(row, i + 1) = s * z(row, i) + c * zf;
                        z(row, i) = c * z(row, i) - s * zf;
                    }
                }
                if (underflow) continue;
                d[l] -= pshift;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix& m) {
    const int n = m.dim();
    if (n <= 0) throw std::invalid_argument("eig_hermitian: empty matrix");
    const double asym = m.hermiticity_error();
    if (asym > 1e-10 * std::max(1.0, m.max_abs()))
        throw std::invalid_argument("eig_hermitian: input not Hermitian, max asymmetry " +
                                    std::to_string(asym));

    // Work on the Hermitian part so the residual asymmetry cannot leak in.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix z = ComplexMatrix::identity(n);
    tridiagonalize(a, z);

    std::vector<double> d(n), e(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();

    // Strip the subdiagonal phases with a diagonal unitary so QL runs on a
    // real tridiagonal; fold the phases into the eigenvector columns.
    cplx phi = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
        const cplx sub = a(i + 1, i);
        const double r = std::abs(sub);
        e[i] = r;
        if (r > 0.0) phi *= sub / r;
        for (int row = 0; row < n; ++row) z(row, i + 1) *= phi;
    }

    tql_implicit(d, e, z);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = z(i, order[j]);
    }
    return out;
}

}  // namespace kerrloss
