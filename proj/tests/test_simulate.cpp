#include "doctest.h"

#include <cmath>
#include <vector>

#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/rng.hpp"
#include "tailfactor/simulate.hpp"

using namespace tailfactor;

TEST_SUITE("simulate") {

TEST_CASE("innovations have standard Pareto margins") {
    for (double theta : {1.0, 2.0}) {
        const std::size_t n = 100000;
        const auto eps = sample_archimedean_pareto(2, theta, n, 9001);
        for (double x : {2.0, 5.0, 10.0}) {
            const double target = 1.0 / x;
            const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(n));
            for (std::size_t col = 0; col < 2; ++col) {
                std::size_t count = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (eps(i, col) > x) ++count;
                const double hat = static_cast<double>(count) / static_cast<double>(n);
                CHECK(std::abs(hat - target) < 3.0 * se);
            }
        }
        // Support starts at 1.
        for (std::size_t i = 0; i < n; ++i) REQUIRE(eps(i, 0) >= 1.0);
    }
}

TEST_CASE("innovation copula matches the Clayton value at the median") {
    const std::size_t n = 100000;
    const auto eps = sample_archimedean_pareto(2, 1.0, n, 31);
    // U = 1 - 1/eps; C(0.5, 0.5) = 1/3 for theta = 1.
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 1.0 - 1.0 / eps(i, 0);
        const double v = 1.0 - 1.0 / eps(i, 1);
        if (u <= 0.5 && v <= 0.5) ++count;
    }
    const double hat = static_cast<double>(count) / static_cast<double>(n);
    const double target = 1.0 / 3.0;
    const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(n));
    CHECK(std::abs(hat - target) < 4.0 * se);
}

TEST_CASE("innovations are asymptotically independent in the upper tail") {
    const std::size_t n = 1000000;
    const auto eps = sample_archimedean_pareto(2, 1.0, n, 77);
    auto tail_ratio = [&](double q) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = 1.0 - 1.0 / eps(i, 0);
            const double v = 1.0 - 1.0 / eps(i, 1);
            if (u > q && v > q) ++count;
        }
        return static_cast<double>(count) / (static_cast<double>(n) * (1.0 - q));
    };
    const double r90 = tail_ratio(0.90);
    const double r99 = tail_ratio(0.99);
    const double r999 = tail_ratio(0.999);
    CHECK(r99 < 0.5 * r90);
    CHECK(r999 < 0.5 * r90);
}

TEST_CASE("moving maxima hand evaluation and order-zero identity") {
    Matrix eps(3, 1);
    eps(0, 0) = 4.0;
    eps(1, 0) = 2.0;
    eps(2, 0) = 8.0;
    const auto z = moving_maxima(eps, 0.5, 1);
    REQUIRE(z.rows() == 2);
    CHECK(z(0, 0) == 4.0); // max(4, 0.5*2)
    CHECK(z(1, 0) == 4.0); // max(2, 0.5*8)

    const auto z0 = moving_maxima(eps, 0.5, 0);
    CHECK(z0 == eps);

    CHECK_THROWS_AS((void)moving_maxima(eps, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)moving_maxima(eps, 1.5, 1), std::invalid_argument);
}

TEST_CASE("exceedance indicators decorrelate past lag p") {
    const std::size_t n = 200000, p = 2;
    const auto eps = sample_archimedean_pareto(1, 1.0, n + p, 13);
    const auto z = moving_maxima(eps, 0.8, p);
    // Empirical 90th percentile threshold.
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = z(i, 0);
    std::sort(sorted.begin(), sorted.end());
    const double q = sorted[static_cast<std::size_t>(0.9 * n)];
    auto indicator_corr = [&](std::size_t lag) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += z(i, 0) > q ? 1.0 : 0.0;
        mean /= static_cast<double>(n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            const double a = (z(i, 0) > q ? 1.0 : 0.0) - mean;
            const double b = (z(i + lag, 0) > q ? 1.0 : 0.0) - mean;
            num += a * b;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double a = (z(i, 0) > q ? 1.0 : 0.0) - mean;
            den += a * a;
        }
        return num / den;
    };
    CHECK(indicator_corr(1) > 0.05);              // within the dependence window
    CHECK(std::abs(indicator_corr(p + 1)) < 0.02); // independent past lag p
}

TEST_CASE("latent marginal tails are regularly varying with index one") {
    const std::size_t n = 1000000, p = 2;
    const double rho = 0.8;
    const auto eps = sample_archimedean_pareto(1, 1.0, n + p, 4242);
    const auto z = moving_maxima(eps, rho, p);
    std::vector<double> scaled;
    for (double x : {10.0, 50.0, 100.0}) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (z(i, 0) > x) ++count;
        scaled.push_back(x * static_cast<double>(count) / static_cast<double>(n));
    }
    for (double s : scaled) {
        CHECK(s > 0.8 * scaled[0]);
        CHECK(s < 1.2 * scaled[0]);
    }
}

TEST_CASE("loading generator: identity case, bounds, determinism") {
    const std::size_t sizes[] = {2, 3, 4};
    const auto ident = generate_loading(5, 5, sizes, {0.35, 0.65}, 1);
    CHECK(ident.entries == Matrix::identity(5));

    const auto A = generate_loading(40, 10, sizes, {0.35, 0.65}, 99);
    A.validate(1e-9);
    for (std::size_t j = 10; j < 40; ++j) {
        std::size_t nnz = 0;
        double min_pos = 1.0;
        for (std::size_t c = 0; c < 10; ++c)
            if (A.entries(j, c) > 0.0) {
                ++nnz;
                min_pos = std::min(min_pos, A.entries(j, c));
            }
        CHECK(nnz >= 2);
        CHECK(nnz <= 4);
        // Worst case for s = 4: 0.35 / (0.35 + 3 * 0.65).
        CHECK(min_pos >= 0.35 / (0.35 + 3.0 * 0.65) - 1e-12);
    }

    const auto again = generate_loading(40, 10, sizes, {0.35, 0.65}, 99);
    CHECK(A.entries == again.entries);
    const auto other = generate_loading(40, 10, sizes, {0.35, 0.65}, 100);
    CHECK_FALSE(A.entries == other.entries);
}

TEST_CASE("synthesized panel is reproducible and composes exactly") {
    SimConfig cfg;
    cfg.n = 300;
    cfg.d = 12;
    cfg.k_factors = 4;
    cfg.seed = 5;
    const auto model = synthesize_panel(cfg);
    const auto again = synthesize_panel(cfg);
    CHECK(model.X == again.X);
    CHECK(model.A.entries == again.A.entries);

    // X = A Z + E holds bit for bit with the library's row mixing order.
    for (std::size_t t = 0; t < cfg.n; ++t)
        for (std::size_t j = 0; j < cfg.d; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < cfg.k_factors; ++a)
                s += model.A.entries(j, a) * model.Z(t, a);
            CHECK(model.X(t, j) == s + model.E(t, j));
        }

    SimConfig bad = cfg;
    bad.rho = 1.2;
    CHECK_THROWS_AS((void)synthesize_panel(bad), std::invalid_argument);
}

TEST_CASE("streaming block maxima equal the panel route bit for bit") {
    SimConfig cfg;
    cfg.n = 500;
    cfg.d = 8;
    cfg.k_factors = 3;
    cfg.seed = 17;
    const auto model = synthesize_panel(cfg);
    for (std::size_t m : {1ul, 7ul, 50ul}) {
        const auto direct = extract_block_maxima(SeriesPanel(model.X), m);
        const auto streamed = synthesize_block_maxima(cfg, m);
        CHECK(direct.maxima == streamed.maxima);
    }
}

TEST_CASE("pure factor pair has weak estimated extremal correlation") {
    SimConfig cfg;
    cfg.n = 10000;
    cfg.d = 2;
    cfg.k_factors = 2;
    cfg.seed = 3;
    const auto bm = synthesize_block_maxima(cfg, 20);
    REQUIRE(bm.k() == 500);
    const auto chi = chi_from_madogram(pairwise_madogram(rank_transform(bm)));
    CHECK(chi.values(0, 1) < 0.15);
}

} // TEST_SUITE
