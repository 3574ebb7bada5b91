#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tailfactor/clustering.hpp"
#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/loading.hpp"

namespace tailfactor {

// Permutation-minimized max-row loss between two loading matrices:
// min over column permutations pi of max_j ||A_hat[j,.] - A[j,pi(.)]||_2.
// The bottleneck objective does not decompose over columns, so the minimum
// is exhaustive for K <= 8 and an assignment-based upper bound above that
// (exact = false).
struct L2Loss {
    double value = 0.0;
    bool exact = true;
    std::vector<std::size_t> permutation; // estimated column a matches truth column permutation[a]
};
L2Loss l2_loss(const LoadingMatrix& A_hat, const LoadingMatrix& A_true);

// Support confusion under a fixed column matching.
struct SupportErrors {
    double tfpp = 0.0;
    double tfnp = 0.0;
    bool tfpp_denominator_zero = false;
    bool tfnp_denominator_zero = false;
};
SupportErrors support_errors(const LoadingMatrix& A_hat, const LoadingMatrix& A_true,
                             std::span<const std::size_t> permutation);

// Distance between sets of normalized columns, minimized over matchings.
// The summed objective decomposes, so assignment is exact for every K.
double centroid_distance(const LoadingMatrix& A_hat, const LoadingMatrix& A_true);

struct TailQuery {
    std::size_t cluster = 0;
    std::vector<double> thresholds; // one per variable, all positive
};

struct TailProbability {
    double value = 0.0;
    bool exceeds_one = false;
};

// Model-implied exceedance rate of the union event that any cluster member
// exceeds its threshold: sum over columns of max_{j in cluster} A[j,l]/x[j].
TailProbability tail_probability(const LoadingMatrix& A_hat, const SoftClusters& clusters,
                                 const TailQuery& query);

// Counting estimator: fraction of blocks where some cluster member exceeds
// its threshold.
double empirical_tail_probability(const BlockMaximaPanel& bm,
                                  std::span<const std::size_t> cluster,
                                  std::span<const double> thresholds);

struct EvalReport {
    std::size_t k_true = 0;
    std::size_t k_hat = 0;
    bool exact_recovery = false;
    std::optional<double> l2_loss;
    bool l2_exact = true;
    std::optional<double> tfpp;
    std::optional<double> tfnp;
    std::optional<double> centroid_distance;
    bool tfpp_denominator_zero = false;
    bool tfnp_denominator_zero = false;
};

// Scores an estimate against ground truth. Loss and support metrics are
// reported only when the factor counts agree. When the truth carries an
// identity pure block the column matching is resolved from it.
EvalReport evaluate(const LoadingMatrix& A_hat, const LoadingMatrix& A_true);

} // namespace tailfactor
