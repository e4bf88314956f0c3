#include "kerrloss/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kerrloss/numerics.hpp"
#include "kerrloss/parallel.hpp"

namespace kerrloss {

Grid Grid::single(double v) { return Grid{{v}}; }

Grid Grid::linspace(double lo, double hi, int n) {
    if (n <= 0) throw std::invalid_argument("Grid::linspace: need n > 0");
    Grid g;
    if (n == 1) {
        g.values = {lo};
        return g;
    }
    g.values.resize(n);
    const double dx = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g.values[i] = lo + i * dx;
    return g;
}

Grid Grid::parse(const std::string& s) {
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int n;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("Grid::parse: expected lo:hi:steps, got '" + s + "'");
        return linspace(lo, hi, n);
    }
    Grid g;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        g.values.push_back(std::stod(item));
    }
    if (g.values.empty()) throw std::invalid_argument("Grid::parse: empty grid '" + s + "'");
    return g;
}

std::size_t SweepTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument("SweepTable: no column named " + name);
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_csv(const SweepTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << to_csv(table);
}

void write_sidecar(const std::string& csv_path, const std::string& experiment,
                   const std::string& config_echo, std::uint64_t seed,
                   const std::vector<int>& dims) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["config"] = config_echo;
    j["seed"] = seed;
    j["dims"] = dims;
    j["version"] = kVersion;
    j["csv"] = csv_path;
    std::ofstream f(csv_path + ".meta.json", std::ios::binary);
    if (!f) throw std::runtime_error("write_sidecar: cannot open " + csv_path + ".meta.json");
    f << j.dump(2) << '\n';
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

OptimalQfi optimal_qfi(const ProbeSpec& p, double lambda, double gamma, int dim,
                       double tol) {
    const ScalarMax best = maximize_scalar(
        [&](double tau) {
            return qfi_numeric_at_dim(p, ChannelParams::from_rescaled(lambda, tau, gamma),
                                      dim, tol)
                .value;
        },
        1e-3, kTauSearchHi, 1e-4);
    return {best.x, best.value};
}

OptimalQfi optimal_qfi(const ProbeSpec& p, double lambda, double gamma) {
    return optimal_qfi(p, lambda, gamma, required_dim(p));
}

OptimalQfi optimal_qfi_state(const FockVector& psi0, double lambda, double gamma,
                             double tol) {
    // Grid scan over one shared trajectory, then golden-section refinement
    // with pointwise evaluations around the best grid cell.
    const int n = 256;
    const double lo = 1e-3, hi = kTauSearchHi;
    std::vector<double> taus(n);
    for (int i = 0; i < n; ++i) taus[i] = lo + i * (hi - lo) / (n - 1);
    const std::vector<double> vals = qfi_numeric_state_path(psi0, lambda, gamma, taus, tol);
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (vals[i] > vals[best]) best = i;
    const double a = taus[std::max(0, best - 1)];
    const double b = taus[std::min(n - 1, best + 1)];
    const ScalarMax refined = golden_section_max(
        [&](double tau) {
            return qfi_numeric_state(psi0, ChannelParams::from_rescaled(lambda, tau, gamma),
                                     tol)
                .value;
        },
        a, b, 1e-4);
    if (vals[best] > refined.value) return {taus[best], vals[best]};
    return {refined.x, refined.value};
}

SweepTable gain_vs_time(const ProbeSpec& p, double lambda, const Grid& tau_grid,
                        double gamma) {
    if (tau_grid.values.empty()) throw std::invalid_argument("gain_vs_time: empty grid");
    const int dim = required_dim(p);
    SweepTable t;
    t.columns = {"tau", "qfi_kerr", "qfi_linear", "gain", "dim"};
    t.rows.resize(tau_grid.size());
    parallel_for(static_cast<std::int64_t>(tau_grid.size()), [&](std::int64_t i) {
        const double tau = tau_grid.values[i];
        const double hk =
            qfi_numeric_at_dim(p, ChannelParams::from_rescaled(lambda, tau, gamma), dim)
                .value;
        const double h0 =
            qfi_numeric_at_dim(p, ChannelParams::from_rescaled(0.0, tau, gamma), dim)
                .value;
        t.rows[i] = {tau, hk, h0, hk / h0 - 1.0, static_cast<double>(dim)};
    });
    return t;
}

SweepTable optimal_gain_surface(const Grid& alpha_grid, const Grid& lambda_grid,
                                double gamma) {
    if (alpha_grid.values.empty() || lambda_grid.values.empty())
        throw std::invalid_argument("optimal_gain_surface: empty grid");
    const std::size_t na = alpha_grid.size(), nl = lambda_grid.size();
    // Warm the truncation cache serially so workers only read it.
    for (double a : alpha_grid.values) required_dim(ProbeSpec::coherent(a));
    SweepTable t;
    t.columns = {"alpha",          "lambda",         "tau_opt_kerr", "qfi_opt_kerr",
                 "tau_opt_linear", "qfi_opt_linear", "gain",         "dim"};
    t.rows.resize(na * nl);
    parallel_for(static_cast<std::int64_t>(na * nl), [&](std::int64_t k) {
        const double a = alpha_grid.values[k / nl];
        const double l = lambda_grid.values[k % nl];
        const ProbeSpec probe = ProbeSpec::coherent(a);
        const int dim = required_dim(probe);
        const OptimalQfi kerr = optimal_qfi(probe, l, gamma, dim);
        const OptimalQfi lin = optimal_qfi(probe, 0.0, gamma, dim);
        const double gain = kerr.value / lin.value - 1.0;
        if (gain < -1e-6)
            throw std::runtime_error("optimal_gain_surface: negative optimal gain");
        t.rows[k] = {a,       l,         kerr.tau, kerr.value,
                     lin.tau, lin.value, gain,     static_cast<double>(dim)};
    });
    return t;
}

SweepTable small_time_gain(ProbeKind kind, double tau, const Grid& nbar_grid,
                           const Grid& lambda_grid, double gamma) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("small_time_gain: tau must lie in (0, 1)");
    const std::size_t nn = nbar_grid.size(), nl = lambda_grid.size();
    auto make_probe = [&](double nbar) {
        if (kind == ProbeKind::Coherent) return ProbeSpec::coherent(std::sqrt(nbar));
        if (kind == ProbeKind::SqueezedVacuum) return ProbeSpec::squeezed_nbar(nbar);
        throw std::invalid_argument("small_time_gain: coherent or squeezed probes only");
    };
    for (double nbar : nbar_grid.values) required_dim(make_probe(nbar));
    SweepTable t;
    t.columns = {"nbar", "lambda", "tau", "qfi_kerr", "qfi_linear", "gain", "dim"};
    t.rows.resize(nn * nl);
    parallel_for(static_cast<std::int64_t>(nn * nl), [&](std::int64_t k) {
        const double nbar = nbar_grid.values[k / nl];
        const double l = lambda_grid.values[k % nl];
        const ProbeSpec probe = make_probe(nbar);
        const int dim = required_dim(probe);
        const double hk =
            qfi_numeric_at_dim(probe, ChannelParams::from_rescaled(l, tau, gamma), dim)
                .value;
        const double h0 =
            qfi_numeric_at_dim(probe, ChannelParams::from_rescaled(0.0, tau, gamma), dim)
                .value;
        t.rows[k] = {nbar, l, tau, hk, h0, hk / h0 - 1.0, static_cast<double>(dim)};
    });
    return t;
}

SweepTable quadrature_ratio_map(RatioMode mode, const Grid& alpha_grid,
                                const Grid& lambda_grid, double gamma,
                                double tau_fixed) {
    const std::size_t na = alpha_grid.size(), nl = lambda_grid.size();
    for (double a : alpha_grid.values) required_dim(ProbeSpec::coherent(a));
    SweepTable t;
    t.columns = {"alpha", "lambda", "tau", "fi_quadrature", "qfi_ref",
                 "ratio", "phase",  "converged", "dim"};
    t.rows.resize(na * nl);
    parallel_for(static_cast<std::int64_t>(na * nl), [&](std::int64_t k) {
        const double a = alpha_grid.values[k / nl];
        const double l = lambda_grid.values[k % nl];
        const ProbeSpec probe = ProbeSpec::coherent(a);
        const int dim = required_dim(probe);
        double tau, qfi_ref;
        if (mode == RatioMode::OptimalTime) {
            const OptimalQfi opt = optimal_qfi(probe, l, gamma, dim);
            tau = opt.tau;
            qfi_ref = opt.value;
        } else {
            tau = tau_fixed;
            qfi_ref = qfi_coherent_analytic(a * a, gamma, tau);
        }
        const MeasurementFI fi = optimize_quadrature_phase_at_dim(
            probe, ChannelParams::from_rescaled(l, tau, gamma), dim);
        const double ratio = fi.value / qfi_ref;
        if (mode == RatioMode::OptimalTime && ratio > 1.0 + 1e-6)
            throw std::runtime_error(
                "quadrature_ratio_map: quadrature FI above the optimal QFI");
        t.rows[k] = {a,     l,        tau,
                     fi.value, qfi_ref, ratio,
                     fi.phase, fi.converged ? 1.0 : 0.0, static_cast<double>(dim)};
    });
    return t;
}

SweepTable qutrit_average_gain(const Grid& nbar_grid, const Grid& lambda_grid,
                               int samples, std::uint64_t seed, double gamma) {
    if (samples < 1) throw std::invalid_argument("qutrit_average_gain: samples must be >= 1");
    const std::size_t nn = nbar_grid.size(), nl = lambda_grid.size();
    const std::size_t ncell = nn * nl;

    // Draw every phi serially so the sample set is fixed by the seed alone,
    // independent of worker scheduling.
    std::vector<double> phis(ncell * samples);
    for (std::size_t c = 0; c < ncell; ++c) {
        SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (c + 1)));
        for (int s = 0; s < samples; ++s)
            phis[c * samples + s] = rng.uniform_open() * (std::numbers::pi / 2.0);
    }

    std::vector<double> gains(ncell * samples);
    parallel_for(static_cast<std::int64_t>(ncell * samples), [&](std::int64_t k) {
        const std::size_t c = k / samples;
        const double nbar = nbar_grid.values[c / nl];
        const double lambda = lambda_grid.values[c % nl];
        const FockVector psi = qutrit_state(nbar, phis[k], std::numbers::pi,
                                            std::numbers::pi);
        const OptimalQfi kerr = optimal_qfi_state(psi, lambda, gamma);
        const OptimalQfi lin = optimal_qfi_state(psi, 0.0, gamma);
        gains[k] = kerr.value / lin.value - 1.0;
    });

    SweepTable t;
    t.columns = {"nbar", "lambda", "avg_gain", "samples"};
    t.rows.resize(ncell);
    for (std::size_t c = 0; c < ncell; ++c) {
        double sum = 0.0;
        for (int s = 0; s < samples; ++s) sum += gains[c * samples + s];
        t.rows[c] = {nbar_grid.values[c / nl], lambda_grid.values[c % nl],
                     sum / samples, static_cast<double>(samples)};
    }
    return t;
}

SweepTable fidelity_map(const Grid& alpha_grid, const Grid& lambda_grid,
                        const Grid& tau_grid) {
    const std::size_t na = alpha_grid.size(), nl = lambda_grid.size(),
                      nt = tau_grid.size();
    SweepTable t;
    t.columns = {"alpha", "lambda", "tau", "fidelity", "dim"};
    t.rows.resize(na * nl * nt);
    parallel_for(static_cast<std::int64_t>(na * nl * nt), [&](std::int64_t k) {
        const double a = alpha_grid.values[k / (nl * nt)];
        const double l = lambda_grid.values[(k / nt) % nl];
        const double tau = tau_grid.values[k % nt];
        const int dim = coherent_min_dim(a * a);
        const double f = fidelity(pure_state_approx(a, l, tau, dim),
                                  evolve_coherent_exact(a, l, tau, dim));
        t.rows[k] = {a, l, tau, f, static_cast<double>(dim)};
    });
    return t;
}

SweepTable baselines(double nbar, const Grid& tau_grid, double gamma) {
    SweepTable t;
    t.columns = {"tau", "qfi_coherent", "qfi_squeezed", "qfi_fock"};
    t.rows.reserve(tau_grid.size());
    for (double tau : tau_grid.values) {
        t.rows.push_back({tau, qfi_coherent_analytic(nbar, gamma, tau),
                          qfi_squeezed_analytic(nbar, gamma, tau),
                          qfi_fock_analytic(nbar, gamma, tau)});
    }
    return t;
}

}  // namespace kerrloss
