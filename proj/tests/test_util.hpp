#pragma once

#include <random>
#include <vector>

#include "distill/linalg.hpp"
#include "distill/qstate.hpp"

namespace distill::testing {

inline ComplexMatrix random_matrix(std::mt19937& rng, std::size_t rows,
                                   std::size_t cols) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Complex{unit(rng), unit(rng)};
        }
    }
    return m;
}

// Random mixture of a few pure states: Hermitian, unit trace, PSD.
inline DensityMatrix random_density(std::mt19937& rng, int num_qubits,
                                    int num_pure = 3) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.1, 1.0);

    ComplexMatrix rho(dim, dim);
    double total_weight = 0.0;
    for (int s = 0; s < num_pure; ++s) {
        std::vector<Complex> v(dim);
        double norm_sq = 0.0;
        for (auto& z : v) {
            z = Complex{gauss(rng), gauss(rng)};
            norm_sq += std::norm(z);
        }
        const double w = unit(rng);
        total_weight += w;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                rho(i, j) += w * v[i] * std::conj(v[j]) / norm_sq;
            }
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            rho(i, j) /= total_weight;
        }
    }
    return DensityMatrix(num_qubits, std::move(rho));
}

}  // namespace distill::testing
