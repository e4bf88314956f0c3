#include <cmath>

#include <doctest.h>

#include "kerrloss/channel.hpp"
#include "kerrloss/eig.hpp"

using namespace kerrloss;

TEST_SUITE("channel") {

TEST_CASE("params: rescaled forms and validation") {
    const auto cp = ChannelParams::from_rescaled(0.5, 2.0, 4.0);
    CHECK(cp.gamma == doctest::Approx(4.0));
    CHECK(cp.lambda() == doctest::Approx(0.5));
    CHECK(cp.tau() == doctest::Approx(2.0));
    CHECK(cp.lambda_tilde == doctest::Approx(2.0));
    CHECK(cp.t == doctest::Approx(0.5));
    ChannelParams bad;
    bad.gamma = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("exact coherent: tau = 0 is the input projector") {
    const auto rho = evolve_coherent_exact(1.2, 0.8, 0.0, 40);
    const auto proj = outer(coherent_state(1.2, 40));
    CHECK((rho - proj).max_abs() < 1e-12);
}

TEST_CASE("exact coherent: lambda = 0 stays pure with damped amplitude") {
    const double tau = 1.5;
    const auto rho = evolve_coherent_exact(1.0, 0.0, tau, 40);
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-10));
    const auto target = outer(coherent_state(std::exp(-tau / 2.0), 40));
    CHECK((rho - target).max_abs() < 1e-12);
}

TEST_CASE("exact coherent: diagonal is lambda-independent") {
    const auto a = evolve_coherent_exact(1.0, 0.0, 0.7, 40);
    const auto b = evolve_coherent_exact(1.0, 2.5, 0.7, 40);
    for (int n = 0; n < 40; ++n)
        CHECK(std::abs(a(n, n) - b(n, n)) < 1e-14);
    // and Poissonian with mean |alpha|^2 e^-tau
    const double m = std::exp(-0.7);
    CHECK(b(0, 0).real() == doctest::Approx(std::exp(-m)).epsilon(1e-12));
    CHECK(b(1, 1).real() == doctest::Approx(m * std::exp(-m)).epsilon(1e-12));
}

TEST_CASE("rhs: vacuum is stationary") {
    ComplexMatrix rho(5);
    rho(0, 0) = 1.0;
    CHECK(lindblad_rhs(rho, 1.3).max_abs() == 0.0);
}

TEST_CASE("rhs: single photon decays into the vacuum") {
    ComplexMatrix rho(5);
    rho(1, 1) = 1.0;
    const auto d = lindblad_rhs(rho, 0.0);
    CHECK(d(1, 1).real() == doctest::Approx(-1.0));
    CHECK(d(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("rhs: trace-free for generic states") {
    const auto rho = evolve_coherent_exact(1.3, 0.4, 0.5, 40);
    CHECK(std::abs(lindblad_rhs(rho, 0.4).trace()) < 1e-12);
}

TEST_CASE("ode agrees with the closed form to 1e-8") {
    for (double lambda : {0.0, 0.5, 2.0}) {
        const auto psi0 = coherent_state(1.0, 32);
        const auto numeric = evolve_ode(psi0, lambda, 1.0, 1e-12);
        const auto exact = evolve_coherent_exact(1.0, lambda, 1.0, 32);
        CHECK((numeric - exact).max_abs() < 1e-8);
    }
}

TEST_CASE("semigroup property at lambda = 0") {
    // evolving |alpha> for tau1 then tau2 equals tau1 + tau2
    const double t1 = 0.4, t2 = 0.9;
    const auto one = evolve_coherent_exact(1.0, 0.0, t1 + t2, 40);
    const auto mid = coherent_state(std::exp(-t1 / 2.0), 40);
    const auto two = evolve_ode(mid, 0.0, t2, 1e-12);
    CHECK((one - two).max_abs() < 1e-9);
}

TEST_CASE("fock probe populations are lambda-invariant") {
    const auto psi = fock_state(1, 6);
    const auto a = evolve_ode(psi, 0.0, 1.0, 1e-12);
    const auto b = evolve_ode(psi, 2.0, 1.0, 1e-12);
    CHECK((a - b).max_abs() < 1e-10);
    CHECK(a(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(a(0, 0).real() == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("qutrit evolution keeps support on the first three levels") {
    const auto psi = qutrit_state(0.5, 0.3, 0.1, 2.0, 6);
    const auto rho = evolve_ode(psi, 1.0, 0.8, 1e-11);
    for (int p = 3; p < 6; ++p)
        for (int q = 0; q < 6; ++q) CHECK(std::abs(rho(p, q)) < 1e-12);
}

TEST_CASE("long-time evolution relaxes to vacuum") {
    const auto rho = evolve_probe_rescaled(ProbeSpec::squeezed_nbar(1.0), 0.7, 30.0, 64,
                                           1e-10);
    CHECK(rho(0, 0).real() >= 1.0 - 1e-6);
}

TEST_CASE("evolved states are physical") {
    const auto rho = evolve_probe_rescaled(ProbeSpec::squeezed_nbar(1.0), 1.0, 0.9, 64,
                                           1e-11);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
    CHECK(rho.hermiticity_error() < 1e-10);
    const auto es = eig_hermitian(rho);
    for (double p : es.eigenvalues) CHECK(p > -1e-9);
}

TEST_CASE("pure-state approximation tracks the channel at small lambda") {
    const cplx alpha{0.5, 0.0};
    const double lambda = 0.25, tau = 1.0;
    const auto rho = evolve_coherent_exact(alpha, lambda, tau, 30);
    const auto psi = pure_state_approx(alpha, lambda, tau, 30);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(psi, rho) > 0.99);
}

TEST_CASE("pure-state approximation becomes exact at long times") {
    // both converge to vacuum
    const auto rho = evolve_coherent_exact(1.0, 0.5, 20.0, 32);
    const auto psi = pure_state_approx(1.0, 0.5, 20.0, 32);
    CHECK(fidelity(psi, rho) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fidelity rejects mismatched dimensions") {
    const auto psi = fock_state(0, 4);
    CHECK_THROWS_AS(fidelity(psi, ComplexMatrix(5)), std::invalid_argument);
}

}  // TEST_SUITE
