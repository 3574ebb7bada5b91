#include "tailfactor/tuning.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailfactor {

DeltaSchedule practical_delta(std::size_t m, std::size_t k, std::size_t d, double c1, double c2) {
    if (m < 1 || k < 2 || d < 2)
        throw std::invalid_argument("practical delta: need m >= 1, k >= 2, d >= 2");
    if (c1 < 0.0 || c2 < 0.0)
        throw std::invalid_argument("practical delta: constants must be nonnegative");
    DeltaSchedule s;
    s.c1 = c1;
    s.c2 = c2;
    s.m = m;
    s.k = k;
    s.d = d;
    s.bias = c2 / static_cast<double>(m);
    s.value = s.bias + c1 * std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(k));
    return s;
}

double theoretical_delta(double d_m, std::size_t k, std::size_t d, double c1) {
    if (k < 4) throw std::invalid_argument("theoretical delta: need k >= 4");
    if (d < 2) throw std::invalid_argument("theoretical delta: need d >= 2");
    if (d_m < 0.0) throw std::invalid_argument("theoretical delta: bias must be nonnegative");
    const double kk = static_cast<double>(k);
    const double ln_kd = std::log(kk * static_cast<double>(d));
    const double ln_k = std::log(kk);
    return d_m + c1 * (std::sqrt(ln_kd / kk) + ln_k * std::log(ln_k) * ln_kd / kk);
}

double goodness_criterion(const LoadingMatrix& A_hat, const ExtremalCorrelationMatrix& chi,
                          const PurePartition& partition) {
    const std::size_t d = A_hat.d();
    const std::size_t k_hat = A_hat.n_factors();
    if (k_hat != partition.k_hat())
        throw std::invalid_argument("criterion: loading columns must align with the partition");
    if (d != chi.d())
        throw std::invalid_argument("criterion: loading rows must align with chi");
    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        if (partition.contains(j)) continue; // pure rows contribute zero
        for (std::size_t a = 0; a < k_hat; ++a) {
            const double entry = A_hat.entries(j, a);
            if (entry <= 0.0) continue;
            double sum = 0.0;
            for (std::size_t i : partition.groups[a]) sum += chi.values(i, j);
            const double chi_bar = sum / static_cast<double>(partition.groups[a].size());
            const double gap = entry - chi_bar;
            total += gap * gap;
        }
    }
    return total;
}

std::vector<double> default_c_grid() {
    constexpr std::size_t count = 25;
    constexpr double lo = 0.2;
    constexpr double hi = 2.5;
    std::vector<double> grid(count);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    return grid;
}

TuningTrace select_delta(const ExtremalCorrelationMatrix& chi, std::size_t m, std::size_t k,
                         std::size_t d, std::span<const double> c_grid, double c2,
                         CliqueSolver solver) {
    if (c_grid.empty()) throw std::invalid_argument("select delta: empty grid");
    for (double c : c_grid)
        if (c <= 0.0) throw std::invalid_argument("select delta: multipliers must be positive");
    const double base =
        c2 / static_cast<double>(m) +
        std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(k));

    TuningTrace trace;
    trace.grid.reserve(c_grid.size());
    bool any_feasible = false;
    bool all_degenerate = true;
    for (double c : c_grid) {
        TuningPoint pt;
        pt.c = c;
        pt.delta = c * base;
        if (pt.delta > 0.0 && pt.delta < 0.5) {
            const ScramResult fit = scram(chi, pt.delta, solver);
            pt.k_hat = fit.partition.k_hat();
            pt.criterion = goodness_criterion(fit.A, chi, fit.partition);
            pt.feasible = true;
            any_feasible = true;
            if (pt.k_hat != d) all_degenerate = false;
        } else {
            pt.criterion = std::numeric_limits<double>::infinity();
        }
        trace.grid.push_back(pt);
    }
    if (!any_feasible)
        throw std::invalid_argument("select delta: no grid point lands in (0, 0.5)");
    trace.degenerate = all_degenerate;

    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        const auto& pt = trace.grid[i];
        if (!pt.feasible) continue;
        if (!have || pt.criterion < trace.grid[best].criterion ||
            (pt.criterion == trace.grid[best].criterion && pt.delta < trace.grid[best].delta)) {
            best = i;
            have = true;
        }
    }
    trace.selected = best;
    trace.delta_star = trace.grid[best].delta;
    return trace;
}

} // namespace tailfactor
