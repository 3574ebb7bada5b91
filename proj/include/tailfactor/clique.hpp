#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tailfactor/extremal_stats.hpp"

namespace tailfactor {

// Undirected graph on [d] with an edge where the extremal correlation does
// not exceed the threshold delta. Adjacency is stored as packed bit rows.
struct IndependenceGraph {
    std::size_t d = 0;
    double delta = 0.0;
    std::size_t words = 0;            // 64-bit words per adjacency row
    std::vector<std::uint64_t> adj;   // d * words, row-major

    IndependenceGraph() = default;
    explicit IndependenceGraph(std::size_t n)
        : d(n), words((n + 63) / 64), adj(n * words, 0) {}

    const std::uint64_t* row(std::size_t v) const { return adj.data() + v * words; }
    std::uint64_t* row(std::size_t v) { return adj.data() + v * words; }

    bool adjacent(std::size_t i, std::size_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }

    void set_edge(std::size_t i, std::size_t j) {
        row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
        row(j)[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    std::size_t degree(std::size_t v) const;
    std::size_t edge_count() const;
};

enum class CliqueSolver { bron_kerbosch, branch_and_bound, brute_force, auto_select };

struct CliqueResult {
    std::vector<std::size_t> vertices; // sorted ascending
    std::size_t size = 0;
    CliqueSolver solver = CliqueSolver::bron_kerbosch;
    double elapsed_seconds = 0.0;
    std::uint64_t nodes_explored = 0;
};

IndependenceGraph build_independence_graph(const ExtremalCorrelationMatrix& chi, double delta);

// Both solvers return the maximum clique that is lexicographically smallest
// as a sorted vertex set, so downstream detection is deterministic and the
// two solvers are interchangeable.
CliqueResult max_clique_bron_kerbosch(const IndependenceGraph& g);
CliqueResult max_clique_branch_and_bound(const IndependenceGraph& g);

// auto_select picks Bron-Kerbosch only when the graph is sparse (edge
// density below 0.2), where enumerating maximal cliques is cheap and
// measured to win; branch-and-bound handles everything denser.
CliqueResult max_clique(const IndependenceGraph& g, CliqueSolver which);

double complement_edge_density(const IndependenceGraph& g);

// Upper bound on the clique number from a greedy sequential coloring.
std::size_t greedy_coloring_bound(const IndependenceGraph& g);

struct BenchmarkRecord {
    std::size_t d = 0;
    std::size_t sparsity = 0;
    std::size_t rep = 0;
    double t_bk = 0.0;
    double t_bnb = 0.0;
    std::size_t clique_size = 0;
    bool sizes_agree = false;
};

struct BenchmarkAggregate {
    std::size_t d = 0;
    std::size_t sparsity = 0;
    double mean_log_ratio = 0.0; // mean of ln(t_bk / t_bnb) over replications
};

// Times both solvers on graphs built from randomly generated loading
// matrices (20 pure rows, supports of size s drawn from 20 factors) at
// delta = 0. Solver size disagreement is a hard failure.
std::vector<BenchmarkRecord> run_clique_benchmark(const std::vector<std::size_t>& dims,
                                                  const std::vector<std::size_t>& sparsities,
                                                  std::size_t reps, std::uint64_t seed);

std::vector<BenchmarkAggregate> aggregate_log_ratio(const std::vector<BenchmarkRecord>& records);

} // namespace tailfactor
