// Times the OpenMP kernels against their serial reference implementations on
// a synthetic panel and checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/rng.hpp"
#include "tailfactor/simulate.hpp"

using namespace tailfactor;

namespace {

template <typename F>
double time_best_of(F&& f, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 20000, d = 400;
    int repeats = 3;
    if (argc > 1) n = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) d = std::strtoull(argv[2], nullptr, 10);
    if (argc > 3) repeats = std::atoi(argv[3]);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::fprintf(stderr, "panel n=%zu d=%zu, best of %d, %d threads\n", n, d, repeats, threads);

    SimConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.k_factors = std::min<std::size_t>(20, d);
    cfg.seed = 7;
    const GeneratedModel model = synthesize_panel(cfg);
    const SeriesPanel series(model.X);
    const std::size_t m = 10;

    const auto bm_par = extract_block_maxima(series, m);
    const auto bm_ser = serial::extract_block_maxima(series, m);
    const auto u_par = rank_transform(bm_par);
    const auto u_ser = serial::rank_transform(bm_par);
    const auto mado_par = pairwise_madogram(u_par);
    const auto mado_ser = serial::pairwise_madogram(u_par);
    const auto chi_par = min_sum_product(model.A);
    const auto chi_ser = serial::min_sum_product(model.A);
    if (!(bm_par.maxima == bm_ser.maxima) || !(u_par.ranks == u_ser.ranks) ||
        !(mado_par.values == mado_ser.values) || !(chi_par.values == chi_ser.values)) {
        std::fprintf(stderr, "FATAL: parallel and serial kernels disagree\n");
        return 1;
    }

    struct Row {
        const char* kernel;
        double serial_s;
        double parallel_s;
    };
    const Row rows[] = {
        {"block_maxima",
         time_best_of([&] { (void)serial::extract_block_maxima(series, m); }, repeats),
         time_best_of([&] { (void)extract_block_maxima(series, m); }, repeats)},
        {"rank_transform",
         time_best_of([&] { (void)serial::rank_transform(bm_par); }, repeats),
         time_best_of([&] { (void)rank_transform(bm_par); }, repeats)},
        {"pairwise_madogram",
         time_best_of([&] { (void)serial::pairwise_madogram(u_par); }, repeats),
         time_best_of([&] { (void)pairwise_madogram(u_par); }, repeats)},
        {"min_sum_product",
         time_best_of([&] { (void)serial::min_sum_product(model.A); }, repeats),
         time_best_of([&] { (void)min_sum_product(model.A); }, repeats)},
    };

    std::printf("kernel,serial_seconds,parallel_seconds,speedup\n");
    for (const auto& row : rows)
        std::printf("%s,%.6f,%.6f,%.2f\n", row.kernel, row.serial_s, row.parallel_s,
                    row.serial_s / row.parallel_s);
    return 0;
}
