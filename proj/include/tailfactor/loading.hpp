#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tailfactor/matrix.hpp"

namespace tailfactor {

// d x K nonnegative matrix whose rows sum to one. Row j holds the mixing
// weights of variable j over the K latent factors.
struct LoadingMatrix {
    Matrix entries;

    LoadingMatrix() = default;
    explicit LoadingMatrix(Matrix m) : entries(std::move(m)) {}

    std::size_t d() const noexcept { return entries.rows(); }
    std::size_t n_factors() const noexcept { return entries.cols(); }

    // Checks nonnegativity and unit row sums (absolute tolerance).
    void validate(double tol = 1e-9) const {
        if (entries.rows() == 0 || entries.cols() == 0)
            throw std::invalid_argument("loading matrix: empty");
        for (std::size_t j = 0; j < entries.rows(); ++j) {
            double sum = 0.0;
            for (std::size_t a = 0; a < entries.cols(); ++a) {
                const double v = entries(j, a);
                if (!std::isfinite(v) || v < 0.0)
                    throw std::invalid_argument("loading matrix: negative or non-finite entry");
                sum += v;
            }
            if (std::abs(sum - 1.0) > tol)
                throw std::invalid_argument("loading matrix: row sum deviates from 1");
        }
    }
};

// Nonnegative vector with unit sum plus the index set of its positive entries.
struct SimplexVector {
    std::vector<double> weights;
    std::vector<std::size_t> support;
};

} // namespace tailfactor
