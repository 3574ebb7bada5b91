#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "tailfactor/assignment.hpp"
#include "tailfactor/metrics.hpp"
#include "tailfactor/rng.hpp"

using namespace tailfactor;

namespace {

LoadingMatrix random_loading(std::size_t d, std::size_t K, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(d, K, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        for (std::size_t c = 0; c < K; ++c) {
            a(j, c) = rng.uniform(0.05, 1.0);
            sum += a(j, c);
        }
        for (std::size_t c = 0; c < K; ++c) a(j, c) /= sum;
    }
    return LoadingMatrix(std::move(a));
}

LoadingMatrix permute_columns(const LoadingMatrix& A, const std::vector<std::size_t>& pi) {
    Matrix out(A.d(), A.n_factors());
    for (std::size_t j = 0; j < A.d(); ++j)
        for (std::size_t c = 0; c < A.n_factors(); ++c) out(j, c) = A.entries(j, pi[c]);
    return LoadingMatrix(std::move(out));
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("hungarian assignment matches brute force") {
    Rng rng(500);
    for (std::size_t rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(6);
        Matrix cost(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) cost(i, j) = rng.uniform(-3.0, 5.0);
        const auto perm = solve_assignment(cost);
        double total = 0.0;
        std::vector<char> used(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE_FALSE(used[perm[i]]);
            used[perm[i]] = 1;
            total += cost(i, perm[i]);
        }
        CHECK(total == doctest::Approx(oracles::brute_force_assignment_cost(cost)).epsilon(1e-12));
    }
}

TEST_CASE("l2 loss: identity, permutation invariance, hand value") {
    const auto A = random_loading(10, 4, 1);
    CHECK(l2_loss(A, A).value == 0.0);

    std::vector<std::size_t> pi = {2, 0, 3, 1};
    CHECK(l2_loss(permute_columns(A, pi), A).value == 0.0);

    Matrix truth(2, 2, 0.0);
    truth(0, 0) = 1.0;
    truth(1, 1) = 1.0;
    Matrix est(2, 2, 0.0);
    est(0, 0) = 0.9; est(0, 1) = 0.1;
    est(1, 1) = 1.0;
    const auto loss = l2_loss(LoadingMatrix(est), LoadingMatrix(truth));
    CHECK(loss.value == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
    CHECK(loss.exact);

    Matrix wrong(3, 2, 0.5);
    CHECK_THROWS_AS((void)l2_loss(LoadingMatrix(wrong), LoadingMatrix(truth)),
                    std::invalid_argument);
}

TEST_CASE("l2 loss is zero under every permutation for K <= 5") {
    const auto A = random_loading(8, 4, 77);
    std::vector<std::size_t> pi(4);
    std::iota(pi.begin(), pi.end(), std::size_t{0});
    do {
        CHECK(l2_loss(permute_columns(A, pi), A).value == 0.0);
    } while (std::next_permutation(pi.begin(), pi.end()));
}

TEST_CASE("assignment heuristic never beats the exhaustive optimum") {
    Rng rng(31);
    for (std::size_t rep = 0; rep < 25; ++rep) {
        const std::size_t K = 3 + rng.uniform_index(4);
        const auto truth = random_loading(12, K, 600 + rep);
        // Noisy estimate of a permuted truth.
        std::vector<std::size_t> pi(K);
        std::iota(pi.begin(), pi.end(), std::size_t{0});
        for (std::size_t i = K; i > 1; --i) std::swap(pi[i - 1], pi[rng.uniform_index(i)]);
        auto est = permute_columns(truth, pi);
        for (std::size_t j = 0; j < est.d(); ++j)
            for (std::size_t c = 0; c < K; ++c)
                est.entries(j, c) = std::max(0.0, est.entries(j, c) + rng.uniform(-0.02, 0.02));

        const auto exact = l2_loss(est, truth);
        // Assignment matching on column distances gives a feasible, hence
        // not smaller, bottleneck value.
        Matrix cost(K, K, 0.0);
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t b = 0; b < K; ++b) {
                double sq = 0.0;
                for (std::size_t j = 0; j < est.d(); ++j) {
                    const double gap = est.entries(j, a) - truth.entries(j, b);
                    sq += gap * gap;
                }
                cost(a, b) = sq;
            }
        const auto heur_perm = solve_assignment(cost);
        double worst = 0.0;
        for (std::size_t j = 0; j < est.d(); ++j) {
            double sq = 0.0;
            for (std::size_t a = 0; a < K; ++a) {
                const double gap = est.entries(j, a) - truth.entries(j, heur_perm[a]);
                sq += gap * gap;
            }
            worst = std::max(worst, sq);
        }
        CHECK(std::sqrt(worst) >= exact.value - 1e-12);
        if (std::sqrt(worst) > exact.value + 1e-12)
            MESSAGE("assignment heuristic exceeded the exhaustive optimum at rep ", rep);
    }
}

TEST_CASE("support errors count confusion cells") {
    const auto A = random_loading(6, 3, 9);
    std::vector<std::size_t> ident = {0, 1, 2};
    const auto none = support_errors(A, A, ident);
    CHECK(none.tfpp == 0.0);
    CHECK(none.tfnp == 0.0);

    Matrix truth(5, 2, 0.0);
    for (std::size_t j = 0; j < 5; ++j) truth(j, j % 2) = 1.0;
    // Positive cells: 5; make the estimate miss exactly one of them.
    Matrix est = truth;
    est(4, 0) = 0.0;
    est(4, 1) = 0.0;
    std::vector<std::size_t> id2 = {0, 1};
    const auto errors = support_errors(LoadingMatrix(est), LoadingMatrix(truth), id2);
    CHECK(errors.tfnp == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(errors.tfpp == 0.0);

    // All-positive truth: the zero-cell denominator degenerates to 0.
    const auto dense = random_loading(4, 2, 11);
    const auto flagged = support_errors(dense, dense, id2);
    CHECK(flagged.tfpp == 0.0);
    CHECK(flagged.tfpp_denominator_zero);
}

TEST_CASE("centroid distance: invariances and hand instance") {
    const auto A = random_loading(9, 4, 21);
    CHECK(centroid_distance(A, A) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(centroid_distance(permute_columns(A, {3, 2, 1, 0}), A) ==
          doctest::Approx(0.0).epsilon(1e-12));
    const auto B = random_loading(9, 4, 22);
    CHECK(centroid_distance(A, B) == doctest::Approx(centroid_distance(B, A)).epsilon(1e-10));

    // Both estimated columns sit on the second truth axis.
    Matrix truth(2, 2, 0.0);
    truth(0, 0) = 1.0;
    truth(1, 1) = 1.0;
    Matrix est(2, 2, 0.0);
    est(1, 0) = 1.0;
    est(1, 1) = 1.0;
    CHECK(centroid_distance(LoadingMatrix(est), LoadingMatrix(truth)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    Matrix zero_col(2, 2, 0.0);
    zero_col(0, 0) = 1.0;
    zero_col(1, 0) = 1.0;
    CHECK_THROWS_AS((void)centroid_distance(LoadingMatrix(zero_col), LoadingMatrix(truth)),
                    std::invalid_argument);
}

TEST_CASE("tail probability: identity, hand value, scaling, monotonicity") {
    LoadingMatrix ident{Matrix::identity(3)};
    SoftClusters clusters;
    clusters.d = 3;
    clusters.groups = {{0}, {1}, {2}};
    TailQuery q;
    q.cluster = 1;
    q.thresholds = {4.0, 4.0, 4.0};
    CHECK(tail_probability(ident, clusters, q).value == doctest::Approx(0.25).epsilon(1e-15));

    Matrix a(3, 2);
    a(0, 0) = 0.7; a(0, 1) = 0.3;
    a(1, 0) = 0.3; a(1, 1) = 0.7;
    a(2, 0) = 0.5; a(2, 1) = 0.5;
    SoftClusters both;
    both.d = 3;
    both.groups = {{0, 1, 2}};
    TailQuery q2;
    q2.cluster = 0;
    q2.thresholds = {1.0, 1.0, 1.0};
    const auto p = tail_probability(LoadingMatrix(a), both, q2);
    CHECK(p.value == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(p.exceeds_one);

    // Homogeneity of degree -1 under threshold scaling.
    TailQuery q3 = q2;
    for (auto& x : q3.thresholds) x *= 7.0;
    CHECK(tail_probability(LoadingMatrix(a), both, q3).value ==
          doctest::Approx(1.4 / 7.0).epsilon(1e-12));

    // Raising one threshold cannot increase the value.
    TailQuery q4 = q2;
    q4.thresholds[0] = 2.0;
    CHECK(tail_probability(LoadingMatrix(a), both, q4).value < p.value);

    TailQuery bad = q2;
    bad.thresholds[1] = 0.0;
    CHECK_THROWS_AS((void)tail_probability(LoadingMatrix(a), both, bad), std::invalid_argument);
    SoftClusters empty;
    empty.d = 3;
    empty.groups = {{}};
    CHECK_THROWS_AS((void)tail_probability(LoadingMatrix(a), empty, q2), std::invalid_argument);
}

TEST_CASE("empirical tail probability counts exceedance blocks") {
    BlockMaximaPanel bm;
    bm.block_size = 5;
    bm.maxima = Matrix(4, 2);
    bm.maxima(0, 0) = 1.0; bm.maxima(0, 1) = 5.0;
    bm.maxima(1, 0) = 2.0; bm.maxima(1, 1) = 1.0;
    bm.maxima(2, 0) = 3.0; bm.maxima(2, 1) = 3.0;
    bm.maxima(3, 0) = 0.5; bm.maxima(3, 1) = 0.9;
    const std::size_t cluster[] = {0, 1};
    const double x[] = {2.0, 4.0};
    CHECK(empirical_tail_probability(bm, cluster, x) == doctest::Approx(0.5).epsilon(1e-15));

    const double low[] = {0.1, 0.1};
    CHECK(empirical_tail_probability(bm, cluster, low) == 1.0);
    const double high[] = {100.0, 100.0};
    CHECK(empirical_tail_probability(bm, cluster, high) == 0.0);
}

TEST_CASE("evaluate resolves the permutation from the pure block for large K") {
    const std::size_t K = 12, d = 30;
    const auto truth = support::strong_signal_loading(d, K, 0.05, 0.05, 88);
    std::vector<std::size_t> pi(K);
    std::iota(pi.begin(), pi.end(), std::size_t{0});
    std::reverse(pi.begin(), pi.end());
    const auto est = permute_columns(truth, pi);
    const auto report = evaluate(est, truth);
    CHECK(report.exact_recovery);
    REQUIRE(report.l2_loss.has_value());
    CHECK(*report.l2_loss == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.l2_exact);
    CHECK(*report.tfpp == 0.0);
    CHECK(*report.tfnp == 0.0);
    CHECK(*report.centroid_distance == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("evaluate withholds losses when the factor counts differ") {
    const auto truth = random_loading(6, 3, 5);
    const auto est = random_loading(6, 4, 6);
    const auto report = evaluate(est, truth);
    CHECK_FALSE(report.exact_recovery);
    CHECK_FALSE(report.l2_loss.has_value());
    CHECK_FALSE(report.tfpp.has_value());
    CHECK_FALSE(report.centroid_distance.has_value());
}

} // TEST_SUITE
