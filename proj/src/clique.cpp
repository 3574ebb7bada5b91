#include "tailfactor/clique.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tailfactor/rng.hpp"
#include "tailfactor/simulate.hpp"

namespace tailfactor {

namespace {

using Word = std::uint64_t;

std::size_t popcount_words(const Word* w, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(w[i]));
    return c;
}

std::size_t popcount_and(const Word* a, const Word* b, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
}

void and_into(const Word* a, const Word* b, Word* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void clear_bit(Word* w, std::size_t v) { w[v >> 6] &= ~(Word{1} << (v & 63)); }
void set_bit(Word* w, std::size_t v) { w[v >> 6] |= Word{1} << (v & 63); }
bool test_bit(const Word* w, std::size_t v) { return (w[v >> 6] >> (v & 63)) & 1u; }

template <typename F>
void for_each_bit(const Word* w, std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) {
        Word word = w[i];
        while (word) {
            const int b = std::countr_zero(word);
            f(i * 64 + static_cast<std::size_t>(b));
            word &= word - 1;
        }
    }
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    const double s = std::chrono::duration<double>(dt).count();
    return s > 0.0 ? s : 1e-9;
}

// ---------------------------------------------------------------------------
// Bron-Kerbosch with Tomita pivoting. Enumerates every maximal clique but
// stores only the best one; equal-size cliques are resolved toward the
// lexicographically smallest sorted vertex set.
struct BronKerbosch {
    const IndependenceGraph& g;
    std::size_t W;
    std::vector<std::vector<Word>> pw, xw; // per-depth P and X buffers
    std::vector<std::size_t> r;
    std::vector<std::size_t> best;
    std::uint64_t nodes = 0;

    explicit BronKerbosch(const IndependenceGraph& graph)
        : g(graph), W(graph.words), pw(graph.d + 1), xw(graph.d + 1) {
        r.reserve(g.d);
    }

    std::vector<Word>& level_p(std::size_t depth) {
        if (pw[depth].empty()) pw[depth].assign(W, 0);
        return pw[depth];
    }
    std::vector<Word>& level_x(std::size_t depth) {
        if (xw[depth].empty()) xw[depth].assign(W, 0);
        return xw[depth];
    }

    void report() {
        if (r.size() < best.size()) return;
        std::vector<std::size_t> sorted(r);
        std::sort(sorted.begin(), sorted.end());
        if (r.size() > best.size() ||
            std::lexicographical_compare(sorted.begin(), sorted.end(), best.begin(), best.end()))
            best = std::move(sorted);
    }

    void expand(std::size_t depth) {
        ++nodes;
        Word* p = pw[depth].data();
        Word* x = xw[depth].data();
        bool p_empty = true, x_empty = true;
        for (std::size_t i = 0; i < W; ++i) {
            p_empty = p_empty && p[i] == 0;
            x_empty = x_empty && x[i] == 0;
        }
        if (p_empty) {
            if (x_empty) report();
            return;
        }
        // Pivot u in P|X maximizing |P & N(u)|.
        std::size_t pivot = g.d;
        std::size_t pivot_score = 0;
        bool have_pivot = false;
        for (std::size_t i = 0; i < W; ++i) {
            Word word = p[i] | x[i];
            while (word) {
                const std::size_t v = i * 64 + static_cast<std::size_t>(std::countr_zero(word));
                word &= word - 1;
                const std::size_t score = popcount_and(p, g.row(v), W);
                if (!have_pivot || score > pivot_score) {
                    have_pivot = true;
                    pivot = v;
                    pivot_score = score;
                }
            }
        }
        // Extension vertices: P minus N(pivot), ascending.
        std::vector<std::size_t> ext;
        for (std::size_t i = 0; i < W; ++i) {
            Word word = p[i] & ~g.row(pivot)[i];
            while (word) {
                ext.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
        for (std::size_t v : ext) {
            and_into(p, g.row(v), level_p(depth + 1).data(), W);
            and_into(x, g.row(v), level_x(depth + 1).data(), W);
            r.push_back(v);
            expand(depth + 1);
            r.pop_back();
            clear_bit(p, v);
            set_bit(x, v);
        }
    }

    std::vector<std::size_t> run() {
        auto& p = level_p(0);
        auto& x = level_x(0);
        std::fill(x.begin(), x.end(), Word{0});
        std::fill(p.begin(), p.end(), Word{0});
        for (std::size_t v = 0; v < g.d; ++v) set_bit(p.data(), v);
        expand(0);
        return best;
    }
};

// ---------------------------------------------------------------------------
// Branch and bound on the binary edge formulation: candidates are greedily
// colored and explored in descending color order, pruning once the color
// bound cannot beat the incumbent; depth-first. A second pass rebuilds the
// lexicographically smallest maximum clique from decision queries.
struct BranchAndBound {
    const IndependenceGraph& g;
    std::size_t W;
    std::vector<std::vector<Word>> pw;
    std::vector<std::size_t> order;  // descending full-graph degree, then index
    std::vector<Word> color_scratch; // class masks, reused across nodes
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> colored_stack;
    std::vector<std::size_t> r;
    std::vector<std::size_t> best;
    std::uint64_t nodes = 0;

    explicit BranchAndBound(const IndependenceGraph& graph)
        : g(graph), W(graph.words), pw(graph.d + 2), colored_stack(graph.d + 2) {
        order.resize(g.d);
        for (std::size_t v = 0; v < g.d; ++v) order[v] = v;
        std::vector<std::size_t> deg(g.d);
        for (std::size_t v = 0; v < g.d; ++v) deg[v] = g.degree(v);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
        color_scratch.assign(g.d * W, 0);
        r.reserve(g.d);
    }

    std::vector<Word>& level(std::size_t depth) {
        if (pw[depth].empty()) pw[depth].assign(W, 0);
        return pw[depth];
    }

    // Number of classes in a greedy partition of P into independent sets;
    // an upper bound on the clique number within P.
    std::size_t coloring_bound(const Word* p) {
        std::size_t classes = 0;
        for (std::size_t v : order) {
            if (!test_bit(p, v)) continue;
            std::size_t c = 0;
            for (; c < classes; ++c)
                if (!intersects(color_scratch.data() + c * W, g.row(v), W)) break;
            if (c == classes) {
                std::fill(color_scratch.begin() + static_cast<std::ptrdiff_t>(classes * W),
                          color_scratch.begin() + static_cast<std::ptrdiff_t>((classes + 1) * W),
                          Word{0});
                ++classes;
            }
            set_bit(color_scratch.data() + c * W, v);
        }
        return classes;
    }

    // Greedy coloring of P as (color, vertex) pairs, colors 1-based. After
    // sorting ascending, the candidates up to index i induce a subgraph that
    // is colored[i].first-colorable, which bounds its clique number.
    void color_candidates(const Word* p, std::vector<std::pair<std::size_t, std::size_t>>& out) {
        out.clear();
        std::size_t classes = 0;
        for (std::size_t v : order) {
            if (!test_bit(p, v)) continue;
            std::size_t c = 0;
            for (; c < classes; ++c)
                if (!intersects(color_scratch.data() + c * W, g.row(v), W)) break;
            if (c == classes) {
                std::fill(color_scratch.begin() + static_cast<std::ptrdiff_t>(classes * W),
                          color_scratch.begin() + static_cast<std::ptrdiff_t>((classes + 1) * W),
                          Word{0});
                ++classes;
            }
            set_bit(color_scratch.data() + c * W, v);
            out.emplace_back(c + 1, v);
        }
        std::sort(out.begin(), out.end());
    }

    std::vector<std::pair<std::size_t, std::size_t>>& colored(std::size_t depth) {
        return colored_stack[depth];
    }

    // Phase 1: maximum size, branching on candidates in descending color
    // order with per-vertex color pruning and best-incumbent cutoff.
    void search(std::size_t depth) {
        ++nodes;
        Word* p = pw[depth].data();
        auto& cand = colored(depth);
        color_candidates(p, cand);
        if (cand.empty()) {
            if (r.size() > best.size()) {
                best.assign(r.begin(), r.end());
                std::sort(best.begin(), best.end());
            }
            return;
        }
        for (std::size_t idx = cand.size(); idx-- > 0;) {
            const auto [color, v] = cand[idx];
            if (r.size() + color <= best.size()) return; // remaining colors only shrink
            and_into(p, g.row(v), level(depth + 1).data(), W);
            r.push_back(v);
            search(depth + 1);
            r.pop_back();
            clear_bit(p, v);
        }
    }

    // Phase 2 decision query: does P contain a clique of size >= need?
    bool exists(std::size_t depth, std::size_t need) {
        if (need == 0) return true;
        ++nodes;
        Word* p = pw[depth].data();
        auto& cand = colored(depth);
        color_candidates(p, cand);
        for (std::size_t idx = cand.size(); idx-- > 0;) {
            const auto [color, v] = cand[idx];
            if (color < need) return false;
            and_into(p, g.row(v), level(depth + 1).data(), W);
            if (exists(depth + 1, need - 1)) return true;
            clear_bit(p, v);
        }
        return false;
    }

    std::vector<std::size_t> run() {
        auto& root = level(0);
        std::fill(root.begin(), root.end(), Word{0});
        for (std::size_t v = 0; v < g.d; ++v) set_bit(root.data(), v);
        best.clear();
        search(0);
        const std::size_t target = best.size();

        // Lexicographic extraction at the certified optimum size.
        std::vector<Word> cand(W, 0);
        for (std::size_t v = 0; v < g.d; ++v) set_bit(cand.data(), v);
        std::vector<std::size_t> prefix;
        for (std::size_t v = 0; v < g.d && prefix.size() < target; ++v) {
            if (!test_bit(cand.data(), v)) continue;
            auto& query = level(0);
            and_into(cand.data(), g.row(v), query.data(), W);
            if (exists(0, target - prefix.size() - 1)) {
                prefix.push_back(v);
                and_into(cand.data(), g.row(v), cand.data(), W);
            } else {
                clear_bit(cand.data(), v);
            }
        }
        return prefix;
    }
};

CliqueResult finish(std::vector<std::size_t> vertices, CliqueSolver solver, double seconds,
                    std::uint64_t nodes) {
    CliqueResult res;
    res.vertices = std::move(vertices);
    res.size = res.vertices.size();
    res.solver = solver;
    res.elapsed_seconds = seconds;
    res.nodes_explored = nodes;
    return res;
}

} // namespace

std::size_t IndependenceGraph::degree(std::size_t v) const {
    return popcount_words(row(v), words);
}

std::size_t IndependenceGraph::edge_count() const {
    std::size_t total = 0;
    for (std::size_t v = 0; v < d; ++v) total += degree(v);
    return total / 2;
}

IndependenceGraph build_independence_graph(const ExtremalCorrelationMatrix& chi, double delta) {
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("independence graph: delta must lie in [0, 1]");
    const std::size_t d = chi.d();
    IndependenceGraph g(d);
    g.delta = delta;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (chi.values(i, j) <= delta) g.set_edge(i, j);
    return g;
}

CliqueResult max_clique_bron_kerbosch(const IndependenceGraph& g) {
    if (g.d < 1) throw std::invalid_argument("max clique: empty graph");
    const auto t0 = std::chrono::steady_clock::now();
    BronKerbosch solver(g);
    auto vertices = solver.run();
    return finish(std::move(vertices), CliqueSolver::bron_kerbosch, elapsed_since(t0),
                  solver.nodes);
}

CliqueResult max_clique_branch_and_bound(const IndependenceGraph& g) {
    if (g.d < 1) throw std::invalid_argument("max clique: empty graph");
    const auto t0 = std::chrono::steady_clock::now();
    BranchAndBound solver(g);
    auto vertices = solver.run();
    return finish(std::move(vertices), CliqueSolver::branch_and_bound, elapsed_since(t0),
                  solver.nodes);
}

double complement_edge_density(const IndependenceGraph& g) {
    if (g.d < 2) return 0.0;
    const double all_pairs = static_cast<double>(g.d) * static_cast<double>(g.d - 1) / 2.0;
    return (all_pairs - static_cast<double>(g.edge_count())) / all_pairs;
}

std::size_t greedy_coloring_bound(const IndependenceGraph& g) {
    BranchAndBound solver(g);
    std::vector<Word> all(g.words, 0);
    for (std::size_t v = 0; v < g.d; ++v) set_bit(all.data(), v);
    return solver.coloring_bound(all.data());
}

CliqueResult max_clique(const IndependenceGraph& g, CliqueSolver which) {
    switch (which) {
    case CliqueSolver::bron_kerbosch:
        return max_clique_bron_kerbosch(g);
    case CliqueSolver::branch_and_bound:
        return max_clique_branch_and_bound(g);
    case CliqueSolver::auto_select:
        // Enumeration pays off only on genuinely sparse graphs; everywhere
        // else the bounded search is safer by orders of magnitude.
        return complement_edge_density(g) > 0.8 ? max_clique_bron_kerbosch(g)
                                                : max_clique_branch_and_bound(g);
    default:
        throw std::invalid_argument("max clique: unsupported solver");
    }
}

std::vector<BenchmarkRecord> run_clique_benchmark(const std::vector<std::size_t>& dims,
                                                  const std::vector<std::size_t>& sparsities,
                                                  std::size_t reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("benchmark: reps must be >= 1");
    constexpr std::size_t n_factors = 20;
    std::vector<BenchmarkRecord> records;
    records.reserve(dims.size() * sparsities.size() * reps);
    for (std::size_t d : dims) {
        if (d <= n_factors)
            throw std::invalid_argument("benchmark: d must exceed the 20 pure rows");
        for (std::size_t s : sparsities) {
            if (s < 1 || s > n_factors)
                throw std::invalid_argument("benchmark: sparsity must lie in [1, 20]");
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const std::string label = "benchmark/" + std::to_string(d) + "/" +
                                          std::to_string(s) + "/" + std::to_string(rep);
                const std::size_t sizes[1] = {s};
                const LoadingMatrix A = generate_loading(
                    d, n_factors, std::span<const std::size_t>(sizes, 1), {0.35, 0.65},
                    derive_stream_seed(seed, label));
                const auto chi = min_sum_product(A);
                const auto graph = build_independence_graph(chi, 0.0);
                const auto bk = max_clique_bron_kerbosch(graph);
                const auto bnb = max_clique_branch_and_bound(graph);
                if (bk.size != bnb.size)
                    throw std::logic_error("benchmark: solver clique sizes disagree at d=" +
                                           std::to_string(d) + " s=" + std::to_string(s));
                BenchmarkRecord rec;
                rec.d = d;
                rec.sparsity = s;
                rec.rep = rep;
                rec.t_bk = bk.elapsed_seconds;
                rec.t_bnb = bnb.elapsed_seconds;
                rec.clique_size = bk.size;
                rec.sizes_agree = true;
                records.push_back(rec);
            }
        }
    }
    return records;
}

std::vector<BenchmarkAggregate> aggregate_log_ratio(const std::vector<BenchmarkRecord>& records) {
    std::vector<BenchmarkAggregate> out;
    for (const auto& rec : records) {
        auto it = std::find_if(out.begin(), out.end(), [&](const BenchmarkAggregate& a) {
            return a.d == rec.d && a.sparsity == rec.sparsity;
        });
        if (it == out.end()) {
            out.push_back({rec.d, rec.sparsity, 0.0});
            it = out.end() - 1;
        }
        it->mean_log_ratio += std::log(rec.t_bk / rec.t_bnb);
    }
    for (auto& agg : out) {
        std::size_t count = 0;
        for (const auto& rec : records)
            if (rec.d == agg.d && rec.sparsity == agg.sparsity) ++count;
        agg.mean_log_ratio /= static_cast<double>(count);
    }
    return out;
}

} // namespace tailfactor
