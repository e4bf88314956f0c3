#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace kerrloss {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim)
        : dim_(dim), a_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[idx(i, j)]; }
    const cplx& operator()(int i, int j) const { return a_[idx(i, j)]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    cplx trace() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;
    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(double s);
    ComplexMatrix& operator*=(cplx s);

    bool operator==(const ComplexMatrix& o) const = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
               static_cast<std::size_t>(j);
    }

    int dim_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, double s);
ComplexMatrix operator*(double s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pure state amplitudes over the truncated Fock basis.
using FockVector = std::vector<cplx>;

/// ||psi||^2
double norm_squared(const FockVector& psi);
cplx inner(const FockVector& a, const FockVector& b);
/// |psi><psi|
ComplexMatrix outer(const FockVector& psi);

}  // namespace kerrloss
