#include "kerrloss/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kerrloss {

ScalarMax golden_section_max(const std::function<double(double)>& f, double a,
                             double b, double tol) {
    if (!(a < b)) throw std::invalid_argument("golden_section_max: need a < b");
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int grid_points) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: need lo < hi");
    const int n = std::max(grid_points, 200);
    const double dx = (hi - lo) / (n - 1);

    int best = 0;
    double fbest = f(lo);
    for (int i = 1; i < n; ++i) {
        const double fi = f(lo + i * dx);
        if (fi > fbest) {
            fbest = fi;
            best = i;
        }
    }

    const double a = lo + std::max(0, best - 1) * dx;
    const double b = lo + std::min(n - 1, best + 1) * dx;
    const ScalarMax refined = golden_section_max(f, a, b, tol);
    if (fbest > refined.value) return {lo + best * dx, fbest};
    return refined;
}

double trapezoid(const std::vector<double>& y, double dx) {
    if (y.size() < 2) return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * dx;
}

}  // namespace kerrloss
