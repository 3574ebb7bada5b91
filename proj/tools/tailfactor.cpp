// Command-line front end: simulation, fitting, tuning, the clique benchmark,
// evaluation metrics and tail probability curves, with reproducible seeds and
// stable file formats.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include "tailfactor/clique.hpp"
#include "tailfactor/clustering.hpp"
#include "tailfactor/extremal_stats.hpp"
#include "tailfactor/io.hpp"
#include "tailfactor/metrics.hpp"
#include "tailfactor/simulate.hpp"
#include "tailfactor/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tailfactor;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
    std::string out_dir = ".";
    int threads = 0;
    bool quiet = false;
};

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

void note(const GlobalOptions& opts, const std::string& message) {
    if (!opts.quiet) std::cerr << message << "\n";
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(round_to_digits(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw std::runtime_error("expected a two-dimensional JSON array");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (rows[i].size() != m.cols())
            throw std::runtime_error("ragged JSON matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

json groups_to_json(const std::vector<std::vector<std::size_t>>& groups) {
    json out = json::array();
    for (const auto& g : groups) out.push_back(g);
    return out;
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failure on " + path.string());
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json doc;
    in >> doc;
    return doc;
}

// Every command leaves a manifest naming its parameters and artifacts.
struct ManifestWriter {
    fs::path dir;
    std::string command;
    json parameters = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    fs::path resolve(const std::string& name) const { return dir / name; }

    fs::path artifact(const std::string& name) {
        outputs.push_back(name);
        return dir / name;
    }

    void finish() const {
        json doc;
        doc["command"] = command;
        doc["version"] = kVersion;
        doc["parameters"] = parameters;
        doc["inputs"] = inputs;
        doc["outputs"] = outputs;
        doc["wall_time_seconds"] = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - start)
                                       .count();
        write_json(dir / "manifest.json", doc);
    }
};

ManifestWriter make_manifest(const GlobalOptions& opts, std::string command) {
    ManifestWriter m;
    m.dir = opts.out_dir;
    fs::create_directories(m.dir);
    m.command = std::move(command);
    return m;
}

CliqueSolver parse_solver(const std::string& name) {
    if (name == "bk") return CliqueSolver::bron_kerbosch;
    if (name == "bnb") return CliqueSolver::branch_and_bound;
    return CliqueSolver::auto_select;
}

struct ChiPipeline {
    std::vector<std::string> columns;
    BlockMaximaPanel bm;
    PseudoObservations pseudo;
    MadogramMatrix mado;
    ExtremalCorrelationMatrix chi;
};

ChiPipeline chi_from_csv(const fs::path& input, std::size_t block_size) {
    ChiPipeline p;
    auto table = read_csv(input);
    p.columns = std::move(table.header);
    const SeriesPanel series(std::move(table.values));
    p.bm = extract_block_maxima(series, block_size);
    p.pseudo = rank_transform(p.bm);
    p.mado = pairwise_madogram(p.pseudo);
    p.chi = chi_from_madogram(p.mado);
    return p;
}

json fit_to_json(const ScramResult& fit, const std::vector<std::string>& columns,
                 std::size_t block_size, std::size_t n_blocks, const std::string& delta_source,
                 const std::string& solver_name,
                 const std::vector<std::size_t>& tie_warnings) {
    json doc;
    doc["manifest"] = "manifest.json";
    doc["k_hat"] = fit.partition.k_hat();
    doc["delta"] = round_to_digits(fit.delta);
    doc["delta_source"] = delta_source;
    doc["block_size"] = block_size;
    doc["n_blocks"] = n_blocks;
    doc["solver"] = solver_name;
    doc["columns"] = columns;
    doc["pure_groups"] = groups_to_json(fit.partition.groups);
    doc["A"] = matrix_to_json(fit.A.entries);
    doc["clusters"] = groups_to_json(fit.clusters.groups);
    doc["flags"] = {{"empty_support_rows", fit.flags.empty_support_rows},
                    {"merge_shrinks", fit.flags.merge_shrinks},
                    {"tie_warnings", tie_warnings}};
    return doc;
}

std::vector<std::size_t> tied_column_indices(const PseudoObservations& pseudo) {
    std::vector<std::size_t> tied;
    for (std::size_t j = 0; j < pseudo.tied_columns.size(); ++j)
        if (pseudo.tied_columns[j]) tied.push_back(j);
    return tied;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const GlobalOptions& opts, const SimConfig& cfg) {
    auto manifest = make_manifest(opts, "simulate");
    manifest.parameters = {{"n", cfg.n},     {"d", cfg.d},         {"k_factors", cfg.k_factors},
                           {"rho", cfg.rho}, {"p", cfg.p},         {"theta", cfg.theta},
                           {"seed", cfg.seed}};

    const GeneratedModel model = synthesize_panel(cfg);
    write_csv(manifest.artifact("X.csv"), default_column_names(cfg.d), model.X);

    json truth;
    truth["manifest"] = "manifest.json";
    truth["A"] = matrix_to_json(model.A.entries);
    truth["K"] = cfg.k_factors;
    truth["seed"] = cfg.seed;
    truth["rho"] = cfg.rho;
    truth["p"] = cfg.p;
    truth["theta"] = cfg.theta;
    truth["n"] = cfg.n;
    truth["d"] = cfg.d;
    write_json(manifest.artifact("truth.json"), truth);

    manifest.finish();
    note(opts, "simulate: wrote X.csv, truth.json, manifest.json to " + opts.out_dir);
    return 0;
}

int cmd_fit(const GlobalOptions& opts, const std::string& input, std::size_t block_size,
            std::optional<double> delta, double c1, double c2, const std::string& solver_name,
            bool emit_madogram) {
    auto manifest = make_manifest(opts, "fit");
    manifest.inputs.push_back(input);

    const ChiPipeline p = chi_from_csv(input, block_size);
    const std::size_t d = p.chi.d();
    const std::size_t k = p.bm.k();

    std::string delta_source = "user";
    double delta_value = 0.0;
    if (delta) {
        delta_value = *delta;
    } else {
        delta_value = practical_delta(block_size, k, d, c1, c2).value;
        delta_source = "practical";
    }
    manifest.parameters = {{"input", input},
                           {"block_size", block_size},
                           {"delta", round_to_digits(delta_value)},
                           {"delta_source", delta_source},
                           {"c1", c1},
                           {"c2", c2},
                           {"solver", solver_name}};
    if (!(delta_value > 0.0 && delta_value < 0.5))
        throw std::runtime_error("fit: resolved delta " + format_number(delta_value) +
                                 " falls outside (0, 0.5); pick a different block size or "
                                 "constants");

    const ScramResult fit = scram(p.chi, delta_value, parse_solver(solver_name));

    write_csv(manifest.artifact("chi.csv"), p.columns, p.chi.values);
    if (emit_madogram)
        write_csv(manifest.artifact("madogram.csv"), p.columns, p.mado.values);
    write_json(manifest.artifact("fit.json"),
               fit_to_json(fit, p.columns, block_size, k, delta_source, solver_name,
                           tied_column_indices(p.pseudo)));

    manifest.finish();
    note(opts, "fit: k_hat = " + std::to_string(fit.partition.k_hat()) + ", delta = " +
                   format_number(delta_value) + " (" + delta_source + ")");
    return 0;
}

int cmd_tune(const GlobalOptions& opts, const std::string& input, std::size_t block_size,
             double c_min, double c_max, std::size_t c_count, double c2,
             const std::string& solver_name) {
    auto manifest = make_manifest(opts, "tune");
    manifest.inputs.push_back(input);
    manifest.parameters = {{"input", input}, {"block_size", block_size}, {"c_min", c_min},
                           {"c_max", c_max}, {"c_count", c_count},      {"c2", c2},
                           {"solver", solver_name}};

    const ChiPipeline p = chi_from_csv(input, block_size);
    std::vector<double> grid(c_count);
    if (c_count == 1) {
        grid[0] = c_min;
    } else {
        const double step = (std::log(c_max) - std::log(c_min)) / static_cast<double>(c_count - 1);
        for (std::size_t i = 0; i < c_count; ++i)
            grid[i] = std::exp(std::log(c_min) + step * static_cast<double>(i));
    }

    const TuningTrace trace =
        select_delta(p.chi, block_size, p.bm.k(), p.chi.d(), grid, c2, parse_solver(solver_name));

    Matrix table(trace.grid.size(), 4);
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        table(i, 0) = trace.grid[i].c;
        table(i, 1) = trace.grid[i].delta;
        table(i, 2) = static_cast<double>(trace.grid[i].k_hat);
        table(i, 3) = trace.grid[i].criterion;
    }
    write_csv(manifest.artifact("tune_trace.csv"), {"c", "delta", "k_hat", "criterion"}, table);

    const auto& best = trace.grid[trace.selected];
    json doc;
    doc["manifest"] = "manifest.json";
    doc["delta_star"] = round_to_digits(trace.delta_star);
    doc["c_star"] = round_to_digits(best.c);
    doc["k_hat"] = best.k_hat;
    doc["criterion"] = round_to_digits(best.criterion);
    doc["selected_index"] = trace.selected;
    doc["degenerate_warning"] = trace.degenerate;
    write_json(manifest.artifact("tune.json"), doc);

    manifest.finish();
    note(opts, "tune: delta_star = " + format_number(trace.delta_star) + " at c = " +
                   format_number(best.c) + ", k_hat = " + std::to_string(best.k_hat));
    return 0;
}

int cmd_benchmark(const GlobalOptions& opts, const std::vector<std::size_t>& dims,
                  const std::vector<std::size_t>& sparsities, std::size_t reps,
                  std::uint64_t seed) {
    auto manifest = make_manifest(opts, "benchmark-clique");
    manifest.parameters = {{"dims", dims}, {"sparsities", sparsities}, {"reps", reps},
                           {"seed", seed}};

    const auto records = run_clique_benchmark(dims, sparsities, reps, seed);
    Matrix table(records.size(), 6);
    for (std::size_t i = 0; i < records.size(); ++i) {
        table(i, 0) = static_cast<double>(records[i].d);
        table(i, 1) = static_cast<double>(records[i].sparsity);
        table(i, 2) = static_cast<double>(records[i].rep);
        table(i, 3) = records[i].t_bk;
        table(i, 4) = records[i].t_bnb;
        table(i, 5) = static_cast<double>(records[i].clique_size);
    }
    write_csv(manifest.artifact("benchmark.csv"),
              {"d", "s", "rep", "t_bk_seconds", "t_bnb_seconds", "clique_size"}, table);

    const auto aggregates = aggregate_log_ratio(records);
    Matrix agg(aggregates.size(), 3);
    for (std::size_t i = 0; i < aggregates.size(); ++i) {
        agg(i, 0) = static_cast<double>(aggregates[i].d);
        agg(i, 1) = static_cast<double>(aggregates[i].sparsity);
        agg(i, 2) = aggregates[i].mean_log_ratio;
    }
    write_csv(manifest.artifact("benchmark_log_ratio.csv"), {"d", "s", "mean_log_ratio"}, agg);

    manifest.finish();
    note(opts, "benchmark-clique: " + std::to_string(records.size()) + " solves recorded");
    return 0;
}

int cmd_metrics(const GlobalOptions& opts, const std::string& estimate_path,
                const std::string& truth_path, const std::string& panel_path,
                std::size_t block_size) {
    auto manifest = make_manifest(opts, "metrics");
    manifest.inputs = {estimate_path, truth_path};
    manifest.parameters = {{"estimate", estimate_path}, {"truth", truth_path}};

    const json est_doc = read_json(estimate_path);
    const json truth_doc = read_json(truth_path);
    const LoadingMatrix A_hat{matrix_from_json(est_doc.at("A"))};
    const LoadingMatrix A_true{matrix_from_json(truth_doc.at("A"))};

    const EvalReport report = evaluate(A_hat, A_true);
    json doc;
    doc["manifest"] = "manifest.json";
    doc["k_true"] = report.k_true;
    doc["k_hat"] = report.k_hat;
    doc["exact_recovery"] = report.exact_recovery;
    doc["l2_loss"] = report.l2_loss ? json(round_to_digits(*report.l2_loss)) : json(nullptr);
    doc["l2_exact"] = report.l2_exact;
    doc["tfpp"] = report.tfpp ? json(round_to_digits(*report.tfpp)) : json(nullptr);
    doc["tfnp"] = report.tfnp ? json(round_to_digits(*report.tfnp)) : json(nullptr);
    doc["centroid_distance"] = report.centroid_distance
                                   ? json(round_to_digits(*report.centroid_distance))
                                   : json(nullptr);
    doc["flags"] = {{"tfpp_denominator_zero", report.tfpp_denominator_zero},
                    {"tfnp_denominator_zero", report.tfnp_denominator_zero}};

    // With a panel, also score the estimate's positive cells against the
    // cluster-averaged empirical correlations it would have been fit to.
    if (!panel_path.empty()) {
        manifest.inputs.push_back(panel_path);
        manifest.parameters["panel"] = panel_path;
        manifest.parameters["block_size"] = block_size;
        const ChiPipeline p = chi_from_csv(panel_path, block_size);
        PurePartition partition;
        for (const auto& g : est_doc.at("pure_groups"))
            partition.groups.push_back(g.get<std::vector<std::size_t>>());
        doc["criterion"] = round_to_digits(goodness_criterion(A_hat, p.chi, partition));
    }
    write_json(manifest.artifact("metrics.json"), doc);

    manifest.finish();
    note(opts, "metrics: wrote metrics.json");
    return 0;
}

int cmd_tailprob(const GlobalOptions& opts, const std::string& fit_path, std::size_t cluster,
                 double t_min, double t_max, std::size_t t_count, const std::string& panel_path,
                 std::size_t block_size) {
    auto manifest = make_manifest(opts, "tailprob");
    manifest.inputs.push_back(fit_path);
    manifest.parameters = {{"fit", fit_path},   {"cluster", cluster}, {"threshold_min", t_min},
                           {"threshold_max", t_max}, {"threshold_count", t_count}};

    const json fit_doc = read_json(fit_path);
    const LoadingMatrix A{matrix_from_json(fit_doc.at("A"))};
    SoftClusters clusters;
    clusters.d = A.d();
    for (const auto& g : fit_doc.at("clusters"))
        clusters.groups.push_back(g.get<std::vector<std::size_t>>());
    if (cluster >= clusters.groups.size())
        throw std::runtime_error("tailprob: cluster index out of range");

    std::optional<BlockMaximaPanel> bm;
    if (!panel_path.empty()) {
        manifest.inputs.push_back(panel_path);
        manifest.parameters["panel"] = panel_path;
        manifest.parameters["block_size"] = block_size;
        auto table = read_csv(panel_path);
        bm = extract_block_maxima(SeriesPanel(std::move(table.values)), block_size);
    }

    Matrix curve(t_count, 4);
    for (std::size_t i = 0; i < t_count; ++i) {
        const double t = t_count == 1 ? t_min
                                      : t_min + (t_max - t_min) * static_cast<double>(i) /
                                                    static_cast<double>(t_count - 1);
        TailQuery query;
        query.cluster = cluster;
        query.thresholds.assign(A.d(), t);
        const TailProbability model = tail_probability(A, clusters, query);
        curve(i, 0) = t;
        curve(i, 1) = model.value;
        curve(i, 2) = model.exceeds_one ? 1.0 : 0.0;
        curve(i, 3) = bm ? empirical_tail_probability(*bm, clusters.groups[cluster],
                                                      query.thresholds)
                         : std::numeric_limits<double>::quiet_NaN();
    }
    write_csv(manifest.artifact("tailprob.csv"),
              {"threshold", "model_p", "model_p_exceeds_one", "empirical_p"}, curve);

    manifest.finish();
    note(opts, "tailprob: wrote tailprob.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loading-matrix and overlapping-cluster estimation for multivariate extremes"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    GlobalOptions opts;
    std::uint64_t global_seed = 1;
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    app.add_option("--threads", opts.threads, "OpenMP thread cap (0 = all cores)")
        ->capture_default_str();
    app.add_flag("--quiet", opts.quiet, "Suppress progress notes");
    app.add_option("--seed", global_seed, "Master seed for randomized commands")
        ->capture_default_str();

    // simulate
    SimConfig cfg;
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic panel with ground truth");
    sim->add_option("--n", cfg.n, "Sample length")->capture_default_str();
    sim->add_option("--d", cfg.d, "Dimension")->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
        ->capture_default_str();
    sim->add_option("--k-factors", cfg.k_factors, "Number of latent factors")
        ->capture_default_str();
    sim->add_option("--rho", cfg.rho, "Moving-maxima decay in (0,1)")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))->capture_default_str();
    sim->add_option("--p", cfg.p, "Moving-maxima order")->capture_default_str();
    sim->add_option("--theta", cfg.theta, "Archimedean copula parameter")
        ->check(CLI::PositiveNumber)->capture_default_str();

    // fit
    std::string fit_input;
    std::size_t fit_block = 0;
    double fit_delta = -1.0;
    double fit_c1 = 1.2, fit_c2 = 1.0;
    std::string fit_solver = "auto";
    bool fit_emit_madogram = false;
    auto* fit = app.add_subcommand("fit", "Estimate the loading matrix from a CSV panel");
    fit->add_option("--input", fit_input, "Input CSV (header row, columns = variables)")
        ->required();
    fit->add_option("--block-size", fit_block, "Block length m")->required()
        ->check(CLI::PositiveNumber);
    auto* delta_opt = fit->add_option("--delta", fit_delta, "Threshold in (0, 0.5)")
                          ->check(CLI::Range(1e-12, 0.5 - 1e-12));
    fit->add_option("--c1", fit_c1, "Variance constant of the threshold rule")
        ->capture_default_str();
    fit->add_option("--c2", fit_c2, "Bias constant of the threshold rule")
        ->capture_default_str();
    fit->add_option("--solver", fit_solver, "Clique solver: bk, bnb, auto")
        ->check(CLI::IsMember({"bk", "bnb", "auto"}))->capture_default_str();
    fit->add_flag("--emit-madogram", fit_emit_madogram, "Also write madogram.csv");

    // tune
    std::string tune_input;
    std::size_t tune_block = 0;
    double tune_c_min = 0.2, tune_c_max = 2.5, tune_c2 = 1.0;
    std::size_t tune_c_count = 25;
    std::string tune_solver = "auto";
    auto* tune = app.add_subcommand("tune", "Data-driven threshold selection over a grid");
    tune->add_option("--input", tune_input, "Input CSV")->required();
    tune->add_option("--block-size", tune_block, "Block length m")->required()
        ->check(CLI::PositiveNumber);
    tune->add_option("--c-min", tune_c_min, "Smallest grid multiplier")->capture_default_str();
    tune->add_option("--c-max", tune_c_max, "Largest grid multiplier")->capture_default_str();
    tune->add_option("--c-count", tune_c_count, "Grid size")->check(CLI::PositiveNumber)
        ->capture_default_str();
    tune->add_option("--c2", tune_c2, "Bias constant")->capture_default_str();
    tune->add_option("--solver", tune_solver, "Clique solver: bk, bnb, auto")
        ->check(CLI::IsMember({"bk", "bnb", "auto"}))->capture_default_str();

    // benchmark-clique
    std::vector<std::size_t> bench_dims = {100};
    std::vector<std::size_t> bench_sparsities = {2, 3, 4, 6, 8, 10, 12, 15};
    std::size_t bench_reps = 5;
    auto* bench = app.add_subcommand("benchmark-clique",
                                     "Time both clique solvers on generated graphs");
    bench->add_option("--dims", bench_dims, "Dimensions (comma separated)")
        ->delimiter(',')->capture_default_str();
    bench->add_option("--sparsities", bench_sparsities, "Support sizes (comma separated)")
        ->delimiter(',')->capture_default_str();
    bench->add_option("--reps", bench_reps, "Replications per cell")->check(CLI::PositiveNumber)
        ->capture_default_str();

    // metrics
    std::string met_estimate, met_truth, met_panel;
    std::size_t met_block = 0;
    auto* met = app.add_subcommand("metrics", "Score an estimate against ground truth");
    met->add_option("--estimate", met_estimate, "fit.json produced by the fit command")
        ->required();
    met->add_option("--truth", met_truth, "truth.json produced by the simulate command")
        ->required();
    auto* met_panel_opt = met->add_option("--panel", met_panel,
                                          "Optional CSV panel for the fit criterion");
    met->add_option("--block-size", met_block, "Block length for --panel")
        ->check(CLI::PositiveNumber)->needs(met_panel_opt);
    met_panel_opt->needs(met->get_option("--block-size"));

    // tailprob
    std::string tp_fit, tp_panel;
    std::size_t tp_cluster = 0, tp_count = 26, tp_block = 0;
    double tp_min = 1.0, tp_max = 10.0;
    auto* tp = app.add_subcommand("tailprob", "Model vs empirical tail exceedance curve");
    tp->add_option("--fit", tp_fit, "fit.json with loading matrix and clusters")->required();
    tp->add_option("--cluster", tp_cluster, "Cluster index (0-based)")->capture_default_str();
    tp->add_option("--threshold-min", tp_min, "Smallest threshold")->check(CLI::PositiveNumber)
        ->capture_default_str();
    tp->add_option("--threshold-max", tp_max, "Largest threshold")->check(CLI::PositiveNumber)
        ->capture_default_str();
    tp->add_option("--threshold-count", tp_count, "Curve resolution")->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* tp_panel_opt = tp->add_option("--input", tp_panel,
                                        "Optional CSV panel for the empirical curve");
    tp->add_option("--block-size", tp_block, "Block length for --input")
        ->check(CLI::PositiveNumber)->needs(tp_panel_opt);
    tp_panel_opt->needs(tp->get_option("--block-size"));

    CLI11_PARSE(app, argc, argv);
    apply_threads(opts.threads);
    cfg.seed = global_seed;

    try {
        if (sim->parsed()) return cmd_simulate(opts, cfg);
        if (fit->parsed())
            return cmd_fit(opts, fit_input, fit_block,
                           *delta_opt ? std::optional<double>(fit_delta) : std::nullopt, fit_c1,
                           fit_c2, fit_solver, fit_emit_madogram);
        if (tune->parsed())
            return cmd_tune(opts, tune_input, tune_block, tune_c_min, tune_c_max, tune_c_count,
                            tune_c2, tune_solver);
        if (bench->parsed())
            return cmd_benchmark(opts, bench_dims, bench_sparsities, bench_reps, global_seed);
        if (met->parsed()) return cmd_metrics(opts, met_estimate, met_truth, met_panel, met_block);
        if (tp->parsed())
            return cmd_tailprob(opts, tp_fit, tp_cluster, tp_min, tp_max, tp_count, tp_panel,
                                tp_block);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
