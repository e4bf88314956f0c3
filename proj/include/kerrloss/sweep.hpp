#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kerrloss/metrology.hpp"

namespace kerrloss {

struct Grid {
    std::vector<double> values;

    static Grid single(double v);
    static Grid linspace(double lo, double hi, int n);
    /// "v" | "lo:hi:steps" | "a,b,c"
    static Grid parse(const std::string& s);
    std::size_t size() const { return values.size(); }
};

/// Tabular sweep output: one named column per quantity, doubles only.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;
};

/// Floats serialized with 17 significant digits; byte-identical for
/// identical configurations.
std::string to_csv(const SweepTable& table);
void write_csv(const SweepTable& table, const std::string& path);

/// JSON sidecar next to the CSV recording the experiment name, config echo,
/// seed, truncation dims and code version.
void write_sidecar(const std::string& csv_path, const std::string& experiment,
                   const std::string& config_echo, std::uint64_t seed,
                   const std::vector<int>& dims);

inline constexpr const char* kVersion = "0.1.0";

/// Interval searched for time optima; the QFI vanishes for tau >> 1 so the
/// maximum is interior.
inline constexpr double kTauSearchHi = 12.0;

struct OptimalQfi {
    double tau = 0.0;
    double value = 0.0;
};

/// max over tau in (0, 12] of the QFI at fixed (lambda, gamma).
OptimalQfi optimal_qfi(const ProbeSpec& p, double lambda, double gamma, int dim,
                       double tol = 1e-10);
OptimalQfi optimal_qfi(const ProbeSpec& p, double lambda, double gamma);
OptimalQfi optimal_qfi_state(const FockVector& psi0, double lambda, double gamma,
                             double tol = 1e-10);

SweepTable gain_vs_time(const ProbeSpec& p, double lambda, const Grid& tau_grid,
                        double gamma);
SweepTable optimal_gain_surface(const Grid& alpha_grid, const Grid& lambda_grid,
                                double gamma);
SweepTable small_time_gain(ProbeKind kind, double tau, const Grid& nbar_grid,
                           const Grid& lambda_grid, double gamma);

enum class RatioMode { OptimalTime, FixedTime };
SweepTable quadrature_ratio_map(RatioMode mode, const Grid& alpha_grid,
                                const Grid& lambda_grid, double gamma,
                                double tau_fixed = 0.1);

SweepTable qutrit_average_gain(const Grid& nbar_grid, const Grid& lambda_grid,
                               int samples, std::uint64_t seed, double gamma = 1.0);
SweepTable fidelity_map(const Grid& alpha_grid, const Grid& lambda_grid,
                        const Grid& tau_grid);
SweepTable baselines(double nbar, const Grid& tau_grid, double gamma);

/// 64-bit splitmix generator; sweeps derive one stream per grid cell so the
/// sample sequence does not depend on scheduling.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// uniform in the open interval (0, 1)
    double uniform_open();
};

}  // namespace kerrloss
