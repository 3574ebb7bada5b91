#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailfactor/loading.hpp"
#include "tailfactor/matrix.hpp"

namespace tailfactor {

// Raw multivariate series: n observations (rows) of d variables (columns).
struct SeriesPanel {
    Matrix values;

    SeriesPanel() = default;
    explicit SeriesPanel(Matrix m);

    std::size_t n() const noexcept { return values.rows(); }
    std::size_t d() const noexcept { return values.cols(); }
};

// Componentwise maxima over consecutive length-m windows; k = floor(n/m)
// blocks, trailing partial block discarded.
struct BlockMaximaPanel {
    Matrix maxima;
    std::size_t block_size = 0;

    std::size_t k() const noexcept { return maxima.rows(); }
    std::size_t d() const noexcept { return maxima.cols(); }
};

// Scaled componentwise ranks of the block maxima, entries r/(k+1).
struct PseudoObservations {
    Matrix ranks;
    std::vector<std::uint8_t> tied_columns; // 1 where the column had ties

    std::size_t k() const noexcept { return ranks.rows(); }
    std::size_t d() const noexcept { return ranks.cols(); }
    bool any_ties() const;
};

// Pairwise madogram matrix, entries clipped to [0, 1/6].
struct MadogramMatrix {
    Matrix values;
    std::vector<std::uint8_t> clipped; // row-major d*d, 1 where the cap bit

    std::size_t d() const noexcept { return values.rows(); }
    bool is_clipped(std::size_t i, std::size_t j) const { return clipped[i * d() + j] != 0; }
};

enum class ChiSource { empirical, theoretical };

// Symmetric matrix of extremal correlations, unit diagonal, entries in [0,1].
struct ExtremalCorrelationMatrix {
    Matrix values;
    ChiSource source = ChiSource::empirical;

    std::size_t d() const noexcept { return values.rows(); }
};

inline constexpr double kMadogramCap = 1.0 / 6.0;

BlockMaximaPanel extract_block_maxima(const SeriesPanel& series, std::size_t m);
PseudoObservations rank_transform(const BlockMaximaPanel& bm);
MadogramMatrix pairwise_madogram(const PseudoObservations& u);
double multivariate_madogram(const PseudoObservations& u, std::span<const std::size_t> subset);
ExtremalCorrelationMatrix chi_from_madogram(const MadogramMatrix& mado);

// Extremal correlation implied by a loading matrix with unit row sums:
// chi(i,j) = sum_a min(A_ia, A_ja).
ExtremalCorrelationMatrix min_sum_product(const LoadingMatrix& A);

// Serial reference kernels. The public functions above run the same per-cell
// computations under OpenMP; outputs must be bit-identical to these.
namespace serial {
BlockMaximaPanel extract_block_maxima(const SeriesPanel& series, std::size_t m);
PseudoObservations rank_transform(const BlockMaximaPanel& bm);
MadogramMatrix pairwise_madogram(const PseudoObservations& u);
ExtremalCorrelationMatrix min_sum_product(const LoadingMatrix& A);
} // namespace serial

} // namespace tailfactor
