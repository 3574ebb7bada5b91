#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailfactor/clique.hpp"
#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/loading.hpp"

namespace tailfactor {

// Estimated number of factors plus disjoint index sets of pure variables,
// one set per factor, in detection order.
struct PurePartition {
    std::vector<std::vector<std::size_t>> groups; // sorted ascending within a group
    std::vector<std::size_t> shrink_log;          // positions of groups shrunk by merge

    std::size_t k_hat() const noexcept { return groups.size(); }
    std::vector<std::size_t> pure_set() const;
    bool contains(std::size_t variable) const;
};

// Support sets of the estimated loading columns; clusters may overlap.
struct SoftClusters {
    std::vector<std::vector<std::size_t>> groups;
    std::size_t d = 0;
};

// Euclidean projection onto the unit simplex.
SimplexVector simplex_project(std::span<const double> v);

// Detects pure variables: builds the delta-independence graph, takes a
// maximum clique, and folds the near-perfectly-correlated neighborhoods of
// the clique vertices into a partition.
PurePartition pure_var(const ExtremalCorrelationMatrix& chi, double delta,
                       CliqueSolver solver = CliqueSolver::auto_select);

// Folds new_group into the partition: the first group with a non-empty
// intersection is replaced by that intersection, otherwise new_group is
// appended.
PurePartition merge(const std::vector<std::size_t>& new_group, PurePartition partition);

// Rows of the loading matrix for the pure variables (canonical basis rows).
struct PureRows {
    Matrix rows;                        // |I| x K
    std::vector<std::size_t> variables; // variable index per row
};
PureRows estimate_pure_rows(const PurePartition& partition);

// Rows for the non-pure variables: cluster-averaged correlations, hard
// thresholding at delta, then simplex projection of the surviving support.
struct MixedRows {
    Matrix rows;                        // |J| x K
    std::vector<std::size_t> variables; // variable index per row
    std::vector<std::size_t> empty_support; // variables that hit the fallback
};
MixedRows htsp(const ExtremalCorrelationMatrix& chi, double delta,
               const PurePartition& partition);

struct FitFlags {
    std::vector<std::size_t> empty_support_rows;
    std::vector<std::size_t> merge_shrinks;
    std::vector<std::size_t> tie_warnings;
};

struct ScramResult {
    LoadingMatrix A;        // d x k_hat, rows in original variable order
    SoftClusters clusters;  // supports of the columns of A
    PurePartition partition;
    double delta = 0.0;
    FitFlags flags;
};

// Full estimation: pure_var + pure rows + htsp, assembled in variable order.
ScramResult scram(const ExtremalCorrelationMatrix& chi, double delta,
                  CliqueSolver solver = CliqueSolver::auto_select);

} // namespace tailfactor
