#include "tailfactor/extremal_stats.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tailfactor {

SeriesPanel::SeriesPanel(Matrix m) : values(std::move(m)) {
    if (values.rows() < 1 || values.cols() < 2)
        throw std::invalid_argument("series panel: need n >= 1 and d >= 2");
    if (!values.all_finite())
        throw std::invalid_argument("series panel: non-finite entry");
}

bool PseudoObservations::any_ties() const {
    for (auto t : tied_columns)
        if (t) return true;
    return false;
}

namespace {

// One column of block maxima; block i spans source rows i*m .. i*m+m-1.
void block_max_column(const Matrix& src, std::size_t m, std::size_t k, std::size_t j,
                      Matrix& out) {
    for (std::size_t i = 0; i < k; ++i) {
        double best = src(i * m, j);
        for (std::size_t t = 1; t < m; ++t) best = std::max(best, src(i * m + t, j));
        out(i, j) = best;
    }
}

// Scaled <=-counting ranks of one column; reports tie presence.
void rank_column(const Matrix& maxima, std::size_t j, Matrix& ranks, std::uint8_t& tied) {
    const std::size_t k = maxima.rows();
    std::vector<double> sorted(k);
    for (std::size_t i = 0; i < k; ++i) sorted[i] = maxima(i, j);
    std::sort(sorted.begin(), sorted.end());
    std::uint8_t has_tie = 0;
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (sorted[i] == sorted[i + 1]) has_tie = 1;
    const double scale = 1.0 / static_cast<double>(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), maxima(i, j));
        ranks(i, j) = static_cast<double>(it - sorted.begin()) * scale;
    }
    tied = has_tie;
}

// Raw bivariate madogram of one pair before clipping.
double madogram_pair(const Matrix& u, std::size_t i, std::size_t j) {
    const std::size_t k = u.rows();
    double sum = 0.0;
    for (std::size_t t = 0; t < k; ++t) sum += std::abs(u(t, i) - u(t, j));
    return sum / (2.0 * static_cast<double>(k));
}

double min_sum_pair(const Matrix& a, std::size_t i, std::size_t j) {
    double sum = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) sum += std::min(a(i, c), a(j, c));
    return sum;
}

BlockMaximaPanel extract_block_maxima_impl(const SeriesPanel& series, std::size_t m,
                                           bool parallel) {
    const std::size_t n = series.n();
    if (m < 1 || m > n)
        throw std::invalid_argument("block size: need 1 <= m <= n, got m=" + std::to_string(m));
    const std::size_t k = n / m;
    const std::size_t d = series.d();
    BlockMaximaPanel out;
    out.block_size = m;
    out.maxima = Matrix(k, d);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t j = 0; j < d; ++j) block_max_column(series.values, m, k, j, out.maxima);
    return out;
}

PseudoObservations rank_transform_impl(const BlockMaximaPanel& bm, bool parallel) {
    if (bm.k() < 1) throw std::invalid_argument("rank transform: empty block maxima panel");
    const std::size_t d = bm.d();
    PseudoObservations out;
    out.ranks = Matrix(bm.k(), d);
    out.tied_columns.assign(d, 0);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t j = 0; j < d; ++j)
        rank_column(bm.maxima, j, out.ranks, out.tied_columns[j]);
    return out;
}

MadogramMatrix pairwise_madogram_impl(const PseudoObservations& u, bool parallel) {
    if (u.k() < 1) throw std::invalid_argument("madogram: empty pseudo-observations");
    const std::size_t d = u.d();
    MadogramMatrix out;
    out.values = Matrix(d, d, 0.0);
    out.clipped.assign(d * d, 0);
    // Pairs are independent and each cell is written exactly once, so the
    // result is identical under any schedule.
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const double raw = madogram_pair(u.ranks, i, j);
            const bool clip = raw > kMadogramCap;
            const double v = clip ? kMadogramCap : raw;
            out.values(i, j) = v;
            out.values(j, i) = v;
            if (clip) {
                out.clipped[i * d + j] = 1;
                out.clipped[j * d + i] = 1;
            }
        }
    }
    return out;
}

ExtremalCorrelationMatrix min_sum_product_impl(const LoadingMatrix& A, bool parallel) {
    A.validate(1e-9);
    const std::size_t d = A.d();
    ExtremalCorrelationMatrix out;
    out.source = ChiSource::theoretical;
    out.values = Matrix(d, d, 0.0);
    for (std::size_t i = 0; i < d; ++i) out.values(i, i) = 1.0;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const double v = min_sum_pair(A.entries, i, j);
            out.values(i, j) = v;
            out.values(j, i) = v;
        }
    }
    return out;
}

} // namespace

BlockMaximaPanel extract_block_maxima(const SeriesPanel& series, std::size_t m) {
    return extract_block_maxima_impl(series, m, true);
}

PseudoObservations rank_transform(const BlockMaximaPanel& bm) {
    return rank_transform_impl(bm, true);
}

MadogramMatrix pairwise_madogram(const PseudoObservations& u) {
    return pairwise_madogram_impl(u, true);
}

double multivariate_madogram(const PseudoObservations& u, std::span<const std::size_t> subset) {
    if (subset.size() < 2)
        throw std::invalid_argument("multivariate madogram: subset needs at least 2 indices");
    for (auto j : subset)
        if (j >= u.d()) throw std::invalid_argument("multivariate madogram: index out of range");
    const std::size_t k = u.k();
    const double inv_card = 1.0 / static_cast<double>(subset.size());
    double sum = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
        double mx = u.ranks(t, subset[0]);
        double mean = u.ranks(t, subset[0]);
        for (std::size_t s = 1; s < subset.size(); ++s) {
            const double v = u.ranks(t, subset[s]);
            mx = std::max(mx, v);
            mean += v;
        }
        sum += mx - mean * inv_card;
    }
    return sum / static_cast<double>(k);
}

ExtremalCorrelationMatrix chi_from_madogram(const MadogramMatrix& mado) {
    const std::size_t d = mado.d();
    ExtremalCorrelationMatrix out;
    out.source = ChiSource::empirical;
    out.values = Matrix(d, d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        out.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < d; ++j) {
            double nu = mado.values(i, j);
            if (nu < -1e-15 || nu > kMadogramCap + 1e-15)
                throw std::invalid_argument("chi transform: madogram entry outside [0, 1/6]");
            nu = std::clamp(nu, 0.0, kMadogramCap);
            const double chi = std::clamp(2.0 - (0.5 + nu) / (0.5 - nu), 0.0, 1.0);
            out.values(i, j) = chi;
            out.values(j, i) = chi;
        }
    }
    return out;
}

ExtremalCorrelationMatrix min_sum_product(const LoadingMatrix& A) {
    return min_sum_product_impl(A, true);
}

namespace serial {

BlockMaximaPanel extract_block_maxima(const SeriesPanel& series, std::size_t m) {
    return extract_block_maxima_impl(series, m, false);
}

PseudoObservations rank_transform(const BlockMaximaPanel& bm) {
    return rank_transform_impl(bm, false);
}

MadogramMatrix pairwise_madogram(const PseudoObservations& u) {
    return pairwise_madogram_impl(u, false);
}

ExtremalCorrelationMatrix min_sum_product(const LoadingMatrix& A) {
    return min_sum_product_impl(A, false);
}

} // namespace serial

} // namespace tailfactor
