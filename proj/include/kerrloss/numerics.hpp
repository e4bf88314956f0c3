#pragma once

#include <functional>
#include <vector>

namespace kerrloss {

/// O(h^2) central difference; works for any type with operator- and
/// scalar multiplication (doubles, ComplexMatrix, ...).
template <class F>
auto central_difference(F&& f, double x0, double h) {
    return (f(x0 + h) - f(x0 - h)) * (1.0 / (2.0 * h));
}

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section refinement of a maximum bracketed by [a, b].
ScalarMax golden_section_max(const std::function<double(double)>& f, double a,
                             double b, double tol);

/// Coarse grid scan (>= 200 points) over [lo, hi] followed by golden-section
/// refinement around the best grid point. For multimodal f the grid density
/// is the guarantee: the best local maximum found from the scan is returned.
ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int grid_points = 256);

/// Composite trapezoid over uniformly spaced samples.
double trapezoid(const std::vector<double>& y, double dx);

}  // namespace kerrloss
