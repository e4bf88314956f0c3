#include "kerrloss/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

namespace kerrloss {
namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel_enabled(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (!g_parallel.load()) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // Exceptions may not cross the OpenMP region; capture the first one.
    std::exception_ptr eptr = nullptr;
    std::mutex m;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(m);
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
}

}  // namespace kerrloss
