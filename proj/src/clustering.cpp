#include "tailfactor/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tailfactor {

std::vector<std::size_t> PurePartition::pure_set() const {
    std::vector<std::size_t> all;
    for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    return all;
}

bool PurePartition::contains(std::size_t variable) const {
    for (const auto& g : groups)
        if (std::binary_search(g.begin(), g.end(), variable)) return true;
    return false;
}

SimplexVector simplex_project(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("simplex projection: empty vector");
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("simplex projection: non-finite entry");

    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    // tau comes from the largest prefix whose smallest member still clears
    // the running threshold.
    double cumsum = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumsum += sorted[i];
        const double candidate = (cumsum - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] > candidate) tau = candidate;
    }
    SimplexVector out;
    out.weights.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = std::max(v[i] - tau, 0.0);
        out.weights[i] = w;
        if (w > 0.0) out.support.push_back(i);
    }
    return out;
}

PurePartition merge(const std::vector<std::size_t>& new_group, PurePartition partition) {
    if (new_group.empty()) throw std::invalid_argument("merge: empty group");
    std::vector<std::size_t> incoming(new_group);
    std::sort(incoming.begin(), incoming.end());
    for (std::size_t gi = 0; gi < partition.groups.size(); ++gi) {
        auto& group = partition.groups[gi];
        std::vector<std::size_t> common;
        std::set_intersection(group.begin(), group.end(), incoming.begin(), incoming.end(),
                              std::back_inserter(common));
        if (!common.empty()) {
            if (common.size() < group.size()) partition.shrink_log.push_back(gi);
            group = std::move(common);
            return partition;
        }
    }
    partition.groups.push_back(std::move(incoming));
    return partition;
}

PurePartition pure_var(const ExtremalCorrelationMatrix& chi, double delta, CliqueSolver solver) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("pure_var: delta must lie in (0, 0.5)");
    const std::size_t d = chi.d();
    const auto graph = build_independence_graph(chi, delta);
    const auto clique = max_clique(graph, solver);

    PurePartition partition;
    for (std::size_t i : clique.vertices) { // ascending, so merges are deterministic
        std::vector<std::size_t> group;
        for (std::size_t j = 0; j < d; ++j)
            if (j != i && 1.0 - chi.values(i, j) <= delta) group.push_back(j);
        group.push_back(i);
        partition = merge(group, std::move(partition));
    }
    return partition;
}

PureRows estimate_pure_rows(const PurePartition& partition) {
    if (partition.k_hat() == 0) throw std::invalid_argument("pure rows: empty partition");
    const std::size_t k_hat = partition.k_hat();
    PureRows out;
    for (std::size_t a = 0; a < k_hat; ++a)
        for (std::size_t v : partition.groups[a]) out.variables.push_back(v);
    out.rows = Matrix(out.variables.size(), k_hat, 0.0);
    std::size_t r = 0;
    for (std::size_t a = 0; a < k_hat; ++a)
        for (std::size_t i = 0; i < partition.groups[a].size(); ++i) out.rows(r++, a) = 1.0;
    return out;
}

MixedRows htsp(const ExtremalCorrelationMatrix& chi, double delta,
               const PurePartition& partition) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("htsp: delta must lie in (0, 0.5)");
    if (partition.k_hat() == 0) throw std::invalid_argument("htsp: empty partition");
    const std::size_t d = chi.d();
    const std::size_t k_hat = partition.k_hat();

    MixedRows out;
    for (std::size_t j = 0; j < d; ++j)
        if (!partition.contains(j)) out.variables.push_back(j);
    out.rows = Matrix(out.variables.size(), k_hat, 0.0);
    std::vector<std::uint8_t> fallback(out.variables.size(), 0);

    // Rows are independent of one another.
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < out.variables.size(); ++r) {
        const std::size_t j = out.variables[r];
        std::vector<double> chi_bar(k_hat);
        for (std::size_t a = 0; a < k_hat; ++a) {
            double sum = 0.0;
            for (std::size_t i : partition.groups[a]) sum += chi.values(i, j);
            chi_bar[a] = sum / static_cast<double>(partition.groups[a].size());
        }
        std::vector<std::size_t> support;
        for (std::size_t a = 0; a < k_hat; ++a)
            if (chi_bar[a] > delta) support.push_back(a);
        if (support.empty()) {
            // Nothing clears the threshold: put full weight on the largest
            // averaged correlation and flag the row.
            std::size_t arg = 0;
            for (std::size_t a = 1; a < k_hat; ++a)
                if (chi_bar[a] > chi_bar[arg]) arg = a;
            out.rows(r, arg) = 1.0;
            fallback[r] = 1;
        } else {
            std::vector<double> restricted(support.size());
            for (std::size_t s = 0; s < support.size(); ++s) restricted[s] = chi_bar[support[s]];
            const SimplexVector projected = simplex_project(restricted);
            for (std::size_t s = 0; s < support.size(); ++s)
                out.rows(r, support[s]) = projected.weights[s];
        }
    }
    for (std::size_t r = 0; r < out.variables.size(); ++r)
        if (fallback[r]) out.empty_support.push_back(out.variables[r]);
    return out;
}

ScramResult scram(const ExtremalCorrelationMatrix& chi, double delta, CliqueSolver solver) {
    ScramResult res;
    res.delta = delta;
    res.partition = pure_var(chi, delta, solver);
    const PureRows pure = estimate_pure_rows(res.partition);
    const MixedRows mixed = htsp(chi, delta, res.partition);

    const std::size_t d = chi.d();
    const std::size_t k_hat = res.partition.k_hat();
    if (pure.variables.size() + mixed.variables.size() != d)
        throw std::logic_error("scram: pure and mixed rows do not cover all variables");

    Matrix A(d, k_hat, 0.0);
    for (std::size_t r = 0; r < pure.variables.size(); ++r)
        for (std::size_t a = 0; a < k_hat; ++a) A(pure.variables[r], a) = pure.rows(r, a);
    for (std::size_t r = 0; r < mixed.variables.size(); ++r)
        for (std::size_t a = 0; a < k_hat; ++a) A(mixed.variables[r], a) = mixed.rows(r, a);
    res.A = LoadingMatrix(std::move(A));

    res.clusters.d = d;
    res.clusters.groups.resize(k_hat);
    for (std::size_t a = 0; a < k_hat; ++a)
        for (std::size_t j = 0; j < d; ++j)
            if (res.A.entries(j, a) > 0.0) res.clusters.groups[a].push_back(j);

    res.flags.empty_support_rows = mixed.empty_support;
    res.flags.merge_shrinks = res.partition.shrink_log;
    return res;
}

} // namespace tailfactor
