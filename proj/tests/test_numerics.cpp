#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "kerrloss/channel.hpp"
#include "kerrloss/eig.hpp"
#include "kerrloss/metrology.hpp"
#include "kerrloss/numerics.hpp"
#include "kerrloss/ode.hpp"
#include "kerrloss/oscillator.hpp"

using namespace kerrloss;

namespace {

ComplexMatrix random_hermitian(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = u(gen);
        for (int j = i + 1; j < dim; ++j) {
            const cplx v{u(gen), u(gen)};
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

double reconstruction_error(const ComplexMatrix& m, const EigenSystem& es) {
    const int dim = m.dim();
    ComplexMatrix r(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < dim; ++k)
                s += es.eigenvectors(i, k) * es.eigenvalues[k] *
                     std::conj(es.eigenvectors(j, k));
            r(i, j) = s - m(i, j);
        }
    return r.max_abs();
}

double unitarity_error(const EigenSystem& es) {
    const int dim = es.eigenvectors.dim();
    double worst = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            cplx s = 0.0;
            for (int i = 0; i < dim; ++i)
                s += std::conj(es.eigenvectors(i, a)) * es.eigenvectors(i, b);
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("eig: identity") {
    const auto es = eig_hermitian(ComplexMatrix::identity(5));
    for (double p : es.eigenvalues) CHECK(p == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(unitarity_error(es) < 1e-12);
}

TEST_CASE("eig: diagonal matrix sorted ascending") {
    ComplexMatrix m(4);
    m(0, 0) = 3.0;
    m(1, 1) = -1.0;
    m(2, 2) = 0.5;
    m(3, 3) = 2.0;
    const auto es = eig_hermitian(m);
    CHECK(es.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(es.eigenvalues[1] == doctest::Approx(0.5));
    CHECK(es.eigenvalues[2] == doctest::Approx(2.0));
    CHECK(es.eigenvalues[3] == doctest::Approx(3.0));
}

TEST_CASE("eig: random Hermitian reconstruction and unitarity") {
    for (unsigned seed : {1u, 2u, 3u}) {
        for (int dim : {2, 7, 24}) {
            const auto m = random_hermitian(dim, seed * 100 + dim);
            const auto es = eig_hermitian(m);
            CHECK(reconstruction_error(m, es) < 1e-10);
            CHECK(unitarity_error(es) < 1e-10);
            double tr = 0.0;
            for (double p : es.eigenvalues) tr += p;
            CHECK(tr == doctest::Approx(m.trace().real()).epsilon(1e-10));
        }
    }
}

TEST_CASE("eig: evolved density matrix has unit-sum nonnegative spectrum") {
    const auto rho = evolve_coherent_exact(1.0, 0.5, 1.0, 30);
    const auto es = eig_hermitian(rho);
    double sum = 0.0;
    for (double p : es.eigenvalues) {
        CHECK(p > -1e-10);
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eig: rejects non-Hermitian input") {
    ComplexMatrix m(3);
    m(0, 1) = 1.0;  // missing conjugate partner
    CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("ode: zero rhs is identity evolution") {
    ComplexMatrix y0(3);
    y0(0, 0) = 1.0;
    y0(1, 2) = cplx{0.3, -0.2};
    const auto y = integrate_ode(
        [](double, const ComplexMatrix& y) { return ComplexMatrix(y.dim()); }, y0, 2.0,
        1e-10);
    CHECK((y - y0).max_abs() < 1e-12);
}

TEST_CASE("ode: scalar exponential decay") {
    ComplexMatrix y0(1);
    y0(0, 0) = 1.0;
    const auto y = integrate_ode(
        [](double, const ComplexMatrix& y) { return y * (-1.0); }, y0, 1.0, 1e-12);
    CHECK(std::abs(y(0, 0) - std::exp(-1.0)) < 1e-10);
}

TEST_CASE("ode: matches the closed-form coherent solution") {
    const auto psi0 = coherent_state(0.8, 30);
    const auto numeric = evolve_ode(psi0, 0.7, 1.3, 1e-12);
    const auto exact = evolve_coherent_exact(0.8, 0.7, 1.3, 30);
    CHECK((numeric - exact).max_abs() < 1e-8);
}

TEST_CASE("ode: rejects bad tolerance") {
    ComplexMatrix y0(1);
    y0(0, 0) = 1.0;
    const auto rhs = [](double, const ComplexMatrix& y) { return y; };
    CHECK_THROWS_AS(integrate_ode(rhs, y0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_ode(rhs, y0, 1.0, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(integrate_ode(rhs, y0, -1.0, 1e-10), std::invalid_argument);
}

TEST_CASE("oscillator: ground state normalization") {
    CHECK(oscillator_wavefunction(0, 0.0) ==
          doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-14));
    // p(x) = exp(-x^2)/sqrt(pi) for the vacuum
    const double x = 0.9;
    CHECK(oscillator_wavefunction(0, x) * oscillator_wavefunction(0, x) ==
          doctest::Approx(std::exp(-x * x) / std::sqrt(std::numbers::pi)));
}

TEST_CASE("oscillator: odd states vanish at the origin") {
    for (int n : {1, 3, 5, 11}) CHECK(oscillator_wavefunction(n, 0.0) == 0.0);
}

TEST_CASE("oscillator: psi_5 integrates to unit norm") {
    const int pts = 4001;
    const double L = 8.0;
    const double dx = 2.0 * L / (pts - 1);
    std::vector<double> y(pts);
    for (int i = 0; i < pts; ++i) {
        const double x = -L + i * dx;
        const double p = oscillator_wavefunction(5, x);
        y[i] = p * p;
    }
    CHECK(trapezoid(y, dx) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("oscillator: batch evaluation agrees with single calls") {
    const double x = -1.7;
    const auto all = oscillator_wavefunctions(20, x);
    REQUIRE(all.size() == 21);
    for (int n = 0; n <= 20; ++n)
        CHECK(all[n] == doctest::Approx(oscillator_wavefunction(n, x)).epsilon(1e-13));
}

TEST_CASE("central difference: polynomial and transcendental targets") {
    const double h = 1e-5;
    CHECK(central_difference([](double x) { return x * x; }, 3.0, h) ==
          doctest::Approx(6.0).epsilon(1e-9));
    CHECK(central_difference([](double x) { return std::exp(x); }, 0.5, h) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-9));
    // O(h^2) error for sin around 1
    const double err =
        std::abs(central_difference([](double x) { return std::sin(x); }, 1.0, 1e-3) -
                 std::cos(1.0));
    CHECK(err < 1e-6);
}

TEST_CASE("central difference: matrix-valued function") {
    const auto f = [](double x) {
        ComplexMatrix m(2);
        m(0, 0) = x * x;
        m(0, 1) = cplx{0.0, x};
        m(1, 0) = cplx{0.0, -x};
        return m;
    };
    const auto d = central_difference(f, 2.0, 1e-5);
    CHECK(std::abs(d(0, 0) - 4.0) < 1e-9);
    CHECK(std::abs(d(0, 1) - cplx{0.0, 1.0}) < 1e-9);
}

TEST_CASE("maximize: parabola") {
    const auto m = maximize_scalar([](double x) { return -(x - 1.3) * (x - 1.3); },
                                   0.0, 4.0, 1e-8);
    CHECK(m.x == doctest::Approx(1.3).epsilon(1e-5));
    CHECK(m.value == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("maximize: tau^2 e^-tau peaks at 2") {
    const auto m = maximize_scalar([](double t) { return t * t * std::exp(-t); },
                                   1e-3, 12.0, 1e-8);
    CHECK(m.x == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(m.value == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("maximize: agrees with a dense grid on the squeezed baseline") {
    const auto f = [](double t) { return qfi_squeezed_analytic(1.0, 1.0, t); };
    const auto m = maximize_scalar(f, 1e-3, 12.0, 1e-8);
    double best = 0.0, bx = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double t = 1e-3 + i * (12.0 - 1e-3) / 199999.0;
        if (f(t) > best) {
            best = f(t);
            bx = t;
        }
    }
    CHECK(m.value >= best - 1e-10);
    CHECK(m.x == doctest::Approx(bx).epsilon(1e-3));
}

TEST_CASE("trapezoid: linear function is exact") {
    std::vector<double> y{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(trapezoid(y, 0.5) == doctest::Approx(4.0));
}

}  // TEST_SUITE
