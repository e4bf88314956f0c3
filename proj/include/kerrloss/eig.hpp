#pragma once

#include "kerrloss/complex_matrix.hpp"

namespace kerrloss {

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // orthonormal columns, M v_k = p_k v_k
};

/// Full eigendecomposition of a Hermitian matrix: Householder reduction to
/// tridiagonal form followed by implicit-shift QL with eigenvector
/// accumulation. Rejects inputs whose asymmetry exceeds
/// 1e-10 * max(1, ||M||_max).
EigenSystem eig_hermitian(const ComplexMatrix& m);

}  // namespace kerrloss
