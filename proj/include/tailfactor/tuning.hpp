#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailfactor/clustering.hpp"
#include "tailfactor/extremal_stats.hpp"

namespace tailfactor {

struct DeltaSchedule {
    double bias = 0.0; // c2 / m
    double c1 = 1.2;
    double c2 = 1.0;
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    double value = 0.0;
};

// delta = c2/m + c1 * sqrt(ln(d)/k), the working rule with default constants.
DeltaSchedule practical_delta(std::size_t m, std::size_t k, std::size_t d, double c1 = 1.2,
                              double c2 = 1.0);

// delta = d_m + c1 * (sqrt(ln(kd)/k) + ln(k) lnln(k) ln(kd) / k).
double theoretical_delta(double d_m, std::size_t k, std::size_t d, double c1);

// Goodness of fit of an estimated loading matrix: squared gaps between the
// positive entries and the cluster-averaged correlations they were fit to.
// Pure rows contribute zero by convention.
double goodness_criterion(const LoadingMatrix& A_hat, const ExtremalCorrelationMatrix& chi,
                          const PurePartition& partition);

struct TuningPoint {
    double c = 0.0;
    double delta = 0.0;
    std::size_t k_hat = 0;
    double criterion = 0.0;
    bool feasible = false; // false when delta falls outside (0, 0.5)
};

struct TuningTrace {
    std::vector<TuningPoint> grid;
    std::size_t selected = 0;
    double delta_star = 0.0;
    bool degenerate = false; // every feasible fit was all-pure with k_hat = d
};

// 25 log-spaced multipliers on [0.2, 2.5].
std::vector<double> default_c_grid();

// Evaluates delta_l = c_l * (c2/m + sqrt(ln(d)/k)) over the grid, fits at
// each feasible point, and selects the criterion minimizer (ties toward the
// smaller delta).
TuningTrace select_delta(const ExtremalCorrelationMatrix& chi, std::size_t m, std::size_t k,
                         std::size_t d, std::span<const double> c_grid, double c2 = 1.0,
                         CliqueSolver solver = CliqueSolver::auto_select);

} // namespace tailfactor
