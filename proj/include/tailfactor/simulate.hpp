#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/loading.hpp"
#include "tailfactor/matrix.hpp"

namespace tailfactor {

// Data-generating process: X_t = A Z_t + E_t with Z a moving-maxima process
// of order p driven by Clayton-coupled standard Pareto innovations and E
// i.i.d. standard normal noise.
struct SimConfig {
    std::size_t n = 5000;
    std::size_t d = 200;
    std::size_t k_factors = 20;
    double rho = 0.8;
    std::size_t p = 2;
    double theta = 1.0;
    std::uint64_t seed = 1;
};

struct GeneratedModel {
    LoadingMatrix A;
    Matrix Z; // n x K latent panel
    Matrix E; // n x d noise panel
    Matrix X; // n x d observed panel, X = A Z + E row by row
};

// count x K innovations with standard Pareto margins and Clayton(theta)
// copula, sampled by the frailty construction. Deterministic per seed.
Matrix sample_archimedean_pareto(std::size_t k_factors, double theta, std::size_t count,
                                 std::uint64_t seed);

// Z_t^(a) = max_{l=0..p} rho^l * eps_{t+l}^(a); consumes rows(eps) - p rows.
Matrix moving_maxima(const Matrix& eps, double rho, std::size_t p);

// First K rows form the identity block (pure variables); every remaining row
// draws a support size from support_sizes, a uniform support subset, and
// uniform weights on weight_range normalized to unit sum.
LoadingMatrix generate_loading(std::size_t d, std::size_t k_factors,
                               std::span<const std::size_t> support_sizes,
                               std::pair<double, double> weight_range, std::uint64_t seed);

GeneratedModel synthesize_panel(const SimConfig& cfg);

// Block maxima of the synthesized panel computed in a streaming pass, bit
// identical to extract_block_maxima(synthesize_panel(cfg).X, m) but without
// materializing the n x d panel.
BlockMaximaPanel synthesize_block_maxima(const SimConfig& cfg, std::size_t m);

inline constexpr std::pair<double, double> kDefaultWeightRange{0.35, 0.65};

// {2, 3, 4} truncated to the factor count.
std::vector<std::size_t> default_support_sizes(std::size_t k_factors);

} // namespace tailfactor
