// Command-line driver: runs one named experiment and writes a CSV plus a
// JSON sidecar describing the configuration.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kerrloss/parallel.hpp"
#include "kerrloss/sweep.hpp"

namespace {

using namespace kerrloss;

struct CommonOpts {
    std::string probe = "coherent";
    double alpha_re = 1.0;
    double alpha_im = 0.0;
    double nbar = 1.0;
    double r = 0.0;
    int n = 1;
    std::string lambda = "0.5";
    std::string tau = "0.1:6:60";
    double gamma = 1.0;
    std::string grid;
    std::uint64_t seed = 20250101;
    std::string out;
    int dim_cap = 300;
    int samples = 1000;
    double tol = 1e-10;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--probe", o.probe, "Probe kind: coherent|squeezed|fock|qutrit");
    cmd->add_option("--alpha", o.alpha_re, "Coherent amplitude (real part)");
    cmd->add_option("--alpha-im", o.alpha_im, "Coherent amplitude (imaginary part)");
    cmd->add_option("--nbar", o.nbar, "Mean input energy");
    cmd->add_option("--r", o.r, "Squeezing argument s (nbar = sinh^2 s)");
    cmd->add_option("--n", o.n, "Fock number");
    cmd->add_option("--lambda", o.lambda, "Kerr/loss ratio, value or grid lo:hi:steps");
    cmd->add_option("--tau", o.tau, "Rescaled time, value or grid lo:hi:steps");
    cmd->add_option("--gamma", o.gamma, "Loss rate")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", o.grid, "Grid for the main sweep axis (lo:hi:steps)");
    cmd->add_option("--seed", o.seed, "PRNG seed for sampled experiments");
    cmd->add_option("--out", o.out, "Output CSV path");
    cmd->add_option("--dim-cap", o.dim_cap, "Truncation search cap");
    cmd->add_option("--samples", o.samples, "Samples per cell (qutrit-gain)");
    cmd->add_option("--tol", o.tol, "ODE tolerance");
    cmd->add_flag("--serial", o.serial, "Disable the OpenMP work loops");
}

ProbeSpec make_probe(const CommonOpts& o) {
    if (o.probe == "coherent") return ProbeSpec::coherent({o.alpha_re, o.alpha_im});
    if (o.probe == "squeezed")
        return o.r != 0.0 ? ProbeSpec::squeezed(o.r) : ProbeSpec::squeezed_nbar(o.nbar);
    if (o.probe == "fock") return ProbeSpec::fock(o.n);
    if (o.probe == "qutrit") return ProbeSpec::qutrit(o.nbar, 0.7853981633974483);
    throw CLI::ValidationError("--probe", "unknown probe kind '" + o.probe + "'");
}

std::string config_echo(const CommonOpts& o) {
    std::ostringstream os;
    os << "probe=" << o.probe << " alpha=" << o.alpha_re;
    if (o.alpha_im != 0.0) os << "+" << o.alpha_im << "i";
    os << " nbar=" << o.nbar << " r=" << o.r << " n=" << o.n
       << " lambda=" << o.lambda << " tau=" << o.tau << " gamma=" << o.gamma
       << " seed=" << o.seed << " dim_cap=" << o.dim_cap
       << " samples=" << o.samples << " tol=" << o.tol;
    return os.str();
}

std::vector<int> dims_column(const SweepTable& t) {
    std::vector<int> dims;
    try {
        const std::size_t c = t.column_index("dim");
        for (const auto& row : t.rows) {
            const int d = static_cast<int>(row[c]);
            if (std::find(dims.begin(), dims.end(), d) == dims.end()) dims.push_back(d);
        }
    } catch (const std::invalid_argument&) {
    }
    return dims;
}

void emit(const SweepTable& t, const CommonOpts& o, const std::string& experiment,
          const std::string& summary) {
    const std::string path = o.out.empty() ? experiment + ".csv" : o.out;
    write_csv(t, path);
    write_sidecar(path, experiment, config_echo(o), o.seed, dims_column(t));
    std::cout << experiment << ": " << summary << " -> " << path << "\n";
}

double column_max(const SweepTable& t, const std::string& name, std::size_t* argrow) {
    const std::size_t c = t.column_index(name);
    double best = t.rows[0][c];
    std::size_t bi = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i][c] > best) {
            best = t.rows[i][c];
            bi = i;
        }
    if (argrow) *argrow = bi;
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loss-rate estimation in a Kerr-lossy bosonic channel"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* c_gain = app.add_subcommand("gain-vs-time", "Relative QFI gain G(tau) at fixed lambda");
    auto* c_opt = app.add_subcommand("optimal-gain", "Optimal relative gain over (alpha, lambda)");
    auto* c_small = app.add_subcommand("small-time-gain", "Gain at fixed small tau over (nbar, lambda)");
    auto* c_quad = app.add_subcommand("quadrature-ratio", "Quadrature FI / QFI ratio map");
    auto* c_qutrit = app.add_subcommand("qutrit-gain", "Averaged optimal gain for random qutrit probes");
    auto* c_fid = app.add_subcommand("fidelity-map", "Fidelity of the pure-state approximation");
    auto* c_base = app.add_subcommand("baselines", "Analytic linear-channel QFI baselines");
    for (CLI::App* c : {c_gain, c_opt, c_small, c_quad, c_qutrit, c_fid, c_base})
        add_common(c, o);
    bool fixed_time = false;
    c_quad->add_flag("--fixed-time", fixed_time, "Fixed-time ratio against the linear baseline");
    double tau_fixed = 0.1;
    c_quad->add_option("--tau-fixed", tau_fixed, "Fixed tau for --fixed-time mode");

    CLI11_PARSE(app, argc, argv);
    set_parallel_enabled(!o.serial);

    try {
        if (c_gain->parsed()) {
            const Grid taus = o.grid.empty() ? Grid::parse(o.tau) : Grid::parse(o.grid);
            const SweepTable t =
                gain_vs_time(make_probe(o), Grid::parse(o.lambda).values.front(), taus, o.gamma);
            std::size_t row;
            const double gmax = column_max(t, "gain", &row);
            std::ostringstream s;
            s << "max G = " << gmax * 100.0 << "% at tau = "
              << t.rows[row][t.column_index("tau")];
            emit(t, o, "gain-vs-time", s.str());
        } else if (c_opt->parsed()) {
            const Grid alphas = o.grid.empty() ? Grid::parse("0.25:2:8") : Grid::parse(o.grid);
            const SweepTable t = optimal_gain_surface(alphas, Grid::parse(o.lambda), o.gamma);
            std::ostringstream s;
            s << "max optimal gain = " << column_max(t, "gain", nullptr) * 100.0 << "%";
            emit(t, o, "optimal-gain", s.str());
        } else if (c_small->parsed()) {
            const ProbeKind kind =
                o.probe == "squeezed" ? ProbeKind::SqueezedVacuum : ProbeKind::Coherent;
            const Grid nbars = o.grid.empty() ? Grid::parse("0.25:4:8") : Grid::parse(o.grid);
            const double tau = Grid::parse(o.tau).values.front();
            const SweepTable t =
                small_time_gain(kind, tau, nbars, Grid::parse(o.lambda), o.gamma);
            std::ostringstream s;
            s << "max G = " << column_max(t, "gain", nullptr) * 100.0 << "% at tau = " << tau;
            emit(t, o, "small-time-gain", s.str());
        } else if (c_quad->parsed()) {
            const Grid alphas = o.grid.empty() ? Grid::parse("0.5:3:6") : Grid::parse(o.grid);
            const SweepTable t = quadrature_ratio_map(
                fixed_time ? RatioMode::FixedTime : RatioMode::OptimalTime, alphas,
                Grid::parse(o.lambda), o.gamma, tau_fixed);
            std::ostringstream s;
            s << "max ratio = " << column_max(t, "ratio", nullptr);
            emit(t, o, "quadrature-ratio", s.str());
        } else if (c_qutrit->parsed()) {
            const Grid nbars = o.grid.empty() ? Grid::parse("0.1:1:5") : Grid::parse(o.grid);
            const SweepTable t = qutrit_average_gain(nbars, Grid::parse(o.lambda),
                                                     o.samples, o.seed, o.gamma);
            std::ostringstream s;
            s << "max avg gain = " << column_max(t, "avg_gain", nullptr) * 100.0 << "%";
            emit(t, o, "qutrit-gain", s.str());
        } else if (c_fid->parsed()) {
            const Grid alphas = o.grid.empty() ? Grid{{0.5, 0.75, 1.0}} : Grid::parse(o.grid);
            const SweepTable t =
                fidelity_map(alphas, Grid::parse(o.lambda), Grid::parse(o.tau));
            std::size_t row;
            const std::size_t c = t.column_index("fidelity");
            double fmin = t.rows[0][c];
            for (const auto& r : t.rows) fmin = std::min(fmin, r[c]);
            (void)row;
            std::ostringstream s;
            s << "min fidelity = " << fmin;
            emit(t, o, "fidelity-map", s.str());
        } else if (c_base->parsed()) {
            const Grid taus = o.grid.empty() ? Grid::parse(o.tau) : Grid::parse(o.grid);
            const SweepTable t = baselines(o.nbar, taus, o.gamma);
            std::ostringstream s;
            s << "nbar = " << o.nbar << ", " << t.rows.size() << " tau points";
            emit(t, o, "baselines", s.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
