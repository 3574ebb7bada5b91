#include "tailfactor/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tailfactor/assignment.hpp"

namespace tailfactor {

namespace {

void check_shapes(const LoadingMatrix& a, const LoadingMatrix& b) {
    if (a.d() != b.d() || a.n_factors() != b.n_factors())
        throw std::invalid_argument("metrics: loading matrices must share shape");
}

// max_j || A_hat[j,.] - A_true[j,perm(.)] ||_2 with an early-exit cap.
double loss_under(const LoadingMatrix& A_hat, const LoadingMatrix& A_true,
                  std::span<const std::size_t> perm, double stop_above = -1.0) {
    const std::size_t d = A_hat.d();
    const std::size_t K = A_hat.n_factors();
    const double cap = stop_above < 0.0 ? std::numeric_limits<double>::infinity()
                                        : stop_above * stop_above;
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double sq = 0.0;
        for (std::size_t a = 0; a < K; ++a) {
            const double gap = A_hat.entries(j, a) - A_true.entries(j, perm[a]);
            sq += gap * gap;
        }
        if (sq > worst) {
            worst = sq;
            if (worst >= cap) return std::sqrt(worst);
        }
    }
    return std::sqrt(worst);
}

std::vector<std::size_t> assignment_permutation(const LoadingMatrix& A_hat,
                                                const LoadingMatrix& A_true) {
    const std::size_t K = A_hat.n_factors();
    const std::size_t d = A_hat.d();
    Matrix cost(K, K, 0.0);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b) {
            double sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double gap = A_hat.entries(j, a) - A_true.entries(j, b);
                sq += gap * gap;
            }
            cost(a, b) = sq;
        }
    return solve_assignment(cost);
}

// Truth column matched to each estimated column via the identity pure block
// of the truth, when that resolves to a bijection.
std::optional<std::vector<std::size_t>> pure_block_permutation(const LoadingMatrix& A_hat,
                                                               const LoadingMatrix& A_true) {
    const std::size_t K = A_true.n_factors();
    if (A_true.d() < K) return std::nullopt;
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b)
            if (A_true.entries(a, b) != (a == b ? 1.0 : 0.0)) return std::nullopt;
    std::vector<std::size_t> perm(K, K);
    std::vector<char> taken(K, 0);
    for (std::size_t a = 0; a < K; ++a) {
        std::size_t arg = 0;
        for (std::size_t b = 1; b < K; ++b)
            if (A_hat.entries(a, b) > A_hat.entries(a, arg)) arg = b;
        if (taken[arg]) return std::nullopt;
        taken[arg] = 1;
        perm[arg] = a; // estimated column arg lines up with truth column a
    }
    return perm;
}

} // namespace

L2Loss l2_loss(const LoadingMatrix& A_hat, const LoadingMatrix& A_true) {
    check_shapes(A_hat, A_true);
    const std::size_t K = A_hat.n_factors();
    L2Loss out;
    if (K <= 8) {
        std::vector<std::size_t> perm(K);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> best_perm(perm);
        do {
            const double value = loss_under(A_hat, A_true, perm, best);
            if (value < best) {
                best = value;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.value = best;
        out.permutation = best_perm;
        out.exact = true;
    } else {
        out.permutation = assignment_permutation(A_hat, A_true);
        out.value = loss_under(A_hat, A_true, out.permutation);
        out.exact = false;
    }
    return out;
}

SupportErrors support_errors(const LoadingMatrix& A_hat, const LoadingMatrix& A_true,
                             std::span<const std::size_t> permutation) {
    check_shapes(A_hat, A_true);
    const std::size_t d = A_hat.d();
    const std::size_t K = A_hat.n_factors();
    if (permutation.size() != K)
        throw std::invalid_argument("support errors: permutation length must equal K");
    std::size_t zero_cells = 0, positive_cells = 0, false_pos = 0, false_neg = 0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t a = 0; a < K; ++a) {
            const bool truth_pos = A_true.entries(j, permutation[a]) > 0.0;
            const bool est_pos = A_hat.entries(j, a) > 0.0;
            if (truth_pos) {
                ++positive_cells;
                if (!est_pos) ++false_neg;
            } else {
                ++zero_cells;
                if (est_pos) ++false_pos;
            }
        }
    }
    SupportErrors out;
    out.tfpp_denominator_zero = zero_cells == 0;
    out.tfnp_denominator_zero = positive_cells == 0;
    out.tfpp = zero_cells == 0 ? 0.0
                               : static_cast<double>(false_pos) / static_cast<double>(zero_cells);
    out.tfnp = positive_cells == 0
                   ? 0.0
                   : static_cast<double>(false_neg) / static_cast<double>(positive_cells);
    return out;
}

double centroid_distance(const LoadingMatrix& A_hat, const LoadingMatrix& A_true) {
    if (A_hat.n_factors() != A_true.n_factors())
        throw std::invalid_argument("centroid distance: factor counts differ");
    if (A_hat.d() != A_true.d())
        throw std::invalid_argument("centroid distance: dimensions differ");
    const std::size_t K = A_hat.n_factors();
    const std::size_t d = A_hat.d();

    auto normalized_columns = [d, K](const LoadingMatrix& A) {
        Matrix cols(K, d, 0.0);
        for (std::size_t a = 0; a < K; ++a) {
            double norm_sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) norm_sq += A.entries(j, a) * A.entries(j, a);
            if (norm_sq <= 0.0)
                throw std::invalid_argument("centroid distance: zero column");
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t j = 0; j < d; ++j) cols(a, j) = A.entries(j, a) * inv;
        }
        return cols;
    };
    const Matrix est = normalized_columns(A_hat);
    const Matrix tru = normalized_columns(A_true);

    Matrix cost(K, K, 0.0);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b) {
            double sq = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double gap = est(a, j) - tru(b, j);
                sq += gap * gap;
            }
            cost(a, b) = sq;
        }
    const auto perm = solve_assignment(cost);
    double total = 0.0;
    for (std::size_t a = 0; a < K; ++a) total += cost(a, perm[a]);
    return std::sqrt(total);
}

TailProbability tail_probability(const LoadingMatrix& A_hat, const SoftClusters& clusters,
                                 const TailQuery& query) {
    if (query.cluster >= clusters.groups.size())
        throw std::invalid_argument("tail probability: cluster index out of range");
    const auto& group = clusters.groups[query.cluster];
    if (group.empty()) throw std::invalid_argument("tail probability: empty cluster");
    if (query.thresholds.size() != A_hat.d())
        throw std::invalid_argument("tail probability: need one threshold per variable");
    for (double x : query.thresholds)
        if (!(x > 0.0)) throw std::invalid_argument("tail probability: thresholds must be positive");

    double total = 0.0;
    for (std::size_t l = 0; l < A_hat.n_factors(); ++l) {
        double best = 0.0;
        for (std::size_t j : group)
            best = std::max(best, A_hat.entries(j, l) / query.thresholds[j]);
        total += best;
    }
    TailProbability out;
    out.value = total;
    out.exceeds_one = total > 1.0;
    return out;
}

double empirical_tail_probability(const BlockMaximaPanel& bm,
                                  std::span<const std::size_t> cluster,
                                  std::span<const double> thresholds) {
    if (cluster.empty()) throw std::invalid_argument("empirical tail: empty cluster");
    if (thresholds.size() != bm.d())
        throw std::invalid_argument("empirical tail: need one threshold per variable");
    for (std::size_t j : cluster)
        if (j >= bm.d()) throw std::invalid_argument("empirical tail: index out of range");
    std::size_t count = 0;
    for (std::size_t i = 0; i < bm.k(); ++i) {
        double ratio = 0.0;
        for (std::size_t j : cluster)
            ratio = std::max(ratio, bm.maxima(i, j) / thresholds[j]);
        if (ratio > 1.0) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(bm.k());
}

EvalReport evaluate(const LoadingMatrix& A_hat, const LoadingMatrix& A_true) {
    if (A_hat.d() != A_true.d())
        throw std::invalid_argument("evaluate: dimensions differ");
    EvalReport report;
    report.k_true = A_true.n_factors();
    report.k_hat = A_hat.n_factors();
    report.exact_recovery = report.k_hat == report.k_true;
    if (!report.exact_recovery) return report;

    const std::size_t K = report.k_true;
    std::vector<std::size_t> perm;
    if (K <= 8) {
        const L2Loss loss = l2_loss(A_hat, A_true);
        report.l2_loss = loss.value;
        report.l2_exact = true;
        perm = loss.permutation;
    } else if (auto pure_perm = pure_block_permutation(A_hat, A_true)) {
        perm = *pure_perm;
        report.l2_loss = loss_under(A_hat, A_true, perm);
        report.l2_exact = true;
    } else {
        const L2Loss loss = l2_loss(A_hat, A_true); // assignment upper bound
        report.l2_loss = loss.value;
        report.l2_exact = loss.exact;
        perm = loss.permutation;
    }

    const SupportErrors errors = support_errors(A_hat, A_true, perm);
    report.tfpp = errors.tfpp;
    report.tfnp = errors.tfnp;
    report.tfpp_denominator_zero = errors.tfpp_denominator_zero;
    report.tfnp_denominator_zero = errors.tfnp_denominator_zero;
    report.centroid_distance = centroid_distance(A_hat, A_true);
    return report;
}

} // namespace tailfactor
