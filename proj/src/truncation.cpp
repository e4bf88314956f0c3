#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "kerrloss/metrology.hpp"
#include "kerrloss/states.hpp"

namespace kerrloss {

namespace {

double lambda0_baseline(const ProbeSpec& p) {
    const double nbar = p.mean_energy();
    switch (p.kind) {
        case ProbeKind::Coherent: return qfi_coherent_analytic(nbar, 1.0, 1.0);
        case ProbeKind::SqueezedVacuum: return qfi_squeezed_analytic(nbar, 1.0, 1.0);
        case ProbeKind::Fock: return qfi_fock_analytic(nbar, 1.0, 1.0);
        case ProbeKind::Qutrit: break;
    }
    throw std::invalid_argument("required_dim: no analytic baseline for this probe");
}

using DimKey = std::tuple<int, double, double, double, int, double, double, int>;

DimKey make_key(const ProbeSpec& p, int cap) {
    return {static_cast<int>(p.kind), p.alpha.real(), p.alpha.imag(), p.r,
            p.n,                      p.nbar_qutrit,  p.phi,          cap};
}

std::mutex g_dim_cache_mutex;
std::map<DimKey, int> g_dim_cache;

}  // namespace

int required_dim(const ProbeSpec& p, int dim_cap) {
    // The qutrit support {0,1,2} is preserved by the loss cascade, so the
    // truncation is exact at dim 3.
    if (p.kind == ProbeKind::Qutrit) return 3;

    const DimKey key = make_key(p, dim_cap);
    {
        std::lock_guard<std::mutex> lock(g_dim_cache_mutex);
        auto it = g_dim_cache.find(key);
        if (it != g_dim_cache.end()) return it->second;
    }

    const double baseline = lambda0_baseline(p);
    const ChannelParams probe_point{1.0, 0.0, 1.0};
    for (int dim = leakage_dim(p, dim_cap); dim <= dim_cap; dim += 4) {
        const double h = qfi_numeric_at_dim(p, probe_point, dim).value;
        if (std::abs(h - baseline) <= 1e-5 * baseline) {
            std::lock_guard<std::mutex> lock(g_dim_cache_mutex);
            g_dim_cache.emplace(key, dim);
            return dim;
        }
    }
    throw std::runtime_error("required_dim: cap " + std::to_string(dim_cap) +
                             " exceeded before matching the analytic baseline; "
                             "lower the probe energy");
}

}  // namespace kerrloss
