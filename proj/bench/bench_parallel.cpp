// Compares the OpenMP work loops against the serial reference loops on a
// representative sweep and checks that both produce identical tables.

#include <chrono>
#include <iostream>

#include "kerrloss/parallel.hpp"
#include "kerrloss/sweep.hpp"

using namespace kerrloss;

namespace {

template <class F>
double time_seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

bool same_table(const SweepTable& a, const SweepTable& b) {
    return a.columns == b.columns && a.rows == b.rows;
}

}  // namespace

int main() {
    const Grid alphas = Grid::linspace(0.5, 2.0, 4);
    const Grid lambdas = Grid::linspace(0.25, 2.0, 4);
    const Grid taus = Grid::linspace(0.1, 4.0, 24);

    SweepTable serial_surface, parallel_surface;
    set_parallel_enabled(false);
    const double t_serial = time_seconds(
        [&] { serial_surface = small_time_gain(ProbeKind::Coherent, 0.5, alphas, lambdas, 1.0); });
    set_parallel_enabled(true);
    const double t_parallel = time_seconds(
        [&] { parallel_surface = small_time_gain(ProbeKind::Coherent, 0.5, alphas, lambdas, 1.0); });
    std::cout << "small-time-gain  serial " << t_serial << " s, parallel " << t_parallel
              << " s, speedup " << t_serial / t_parallel
              << (same_table(serial_surface, parallel_surface) ? "  (tables identical)"
                                                               : "  (TABLES DIFFER)")
              << "\n";

    SweepTable serial_gain, parallel_gain;
    set_parallel_enabled(false);
    const double g_serial = time_seconds(
        [&] { serial_gain = gain_vs_time(ProbeSpec::squeezed_nbar(1.0), 0.5, taus, 1.0); });
    set_parallel_enabled(true);
    const double g_parallel = time_seconds(
        [&] { parallel_gain = gain_vs_time(ProbeSpec::squeezed_nbar(1.0), 0.5, taus, 1.0); });
    std::cout << "gain-vs-time     serial " << g_serial << " s, parallel " << g_parallel
              << " s, speedup " << g_serial / g_parallel
              << (same_table(serial_gain, parallel_gain) ? "  (tables identical)"
                                                         : "  (TABLES DIFFER)")
              << "\n";

    const bool ok = same_table(serial_surface, parallel_surface) &&
                    same_table(serial_gain, parallel_gain);
    return ok ? 0 : 1;
}
