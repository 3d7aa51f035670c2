#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace distill {

using Complex = std::complex<double>;

/// Tolerance for algebraic identities on unit-scale inputs.
inline constexpr double kAlgebraTol = 1e-12;

/// Tolerance for state-validity checks (Hermiticity, trace, PSD probes).
inline constexpr double kStateTol = 1e-9;

/// Dense row-major complex matrix. Every operation returns a new value; the
/// sizes in this project never exceed 16x16, so copying is cheap.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Complex& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    Complex& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    /// True when every entry has finite real and imaginary parts.
    bool all_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    return sub(a, b);
}

/// Largest entrywise absolute difference: max_ij |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

}  // namespace distill
