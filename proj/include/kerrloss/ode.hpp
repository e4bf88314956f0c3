#pragma once

#include <functional>

#include "kerrloss/complex_matrix.hpp"

namespace kerrloss {

using OdeRhs = std::function<ComplexMatrix(double, const ComplexMatrix&)>;

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(tau, y) from 0 to
/// tau_end. Local error per step is kept below tol (mixed absolute/relative).
/// Throws on step underflow (< 1e-14), reporting the last tau reached.
ComplexMatrix integrate_ode(const OdeRhs& rhs, const ComplexMatrix& y0,
                            double tau_end, double tol);

/// Single integration pass that records the solution at every requested tau
/// (ascending, >= 0). Equivalent to integrating to each point separately but
/// without repeating the shared prefix of the trajectory.
std::vector<ComplexMatrix> integrate_ode_path(const OdeRhs& rhs,
                                              const ComplexMatrix& y0,
                                              const std::vector<double>& taus,
                                              double tol);

}  // namespace kerrloss
