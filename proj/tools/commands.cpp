#include "cli.hpp"

#include "l0dag/cpdag.hpp"
#include "l0dag/io.hpp"
#include "l0dag/model_select.hpp"
#include "l0dag/oracle.hpp"
#include "l0dag/parallel.hpp"
#include "l0dag/rng.hpp"
#include "l0dag/sem_sim.hpp"
#include "l0dag/solver.hpp"
#include "l0dag/superstructure.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;

namespace l0dag::cli {

namespace {

/// Raised for bad arguments that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LearnOptions {
    std::string superstructure = "ns";
    std::optional<double> ns_rho;
    std::optional<double> lambda_sq;
    int bic_grid_max_c = 15;
    int spacer_c = 5;
    int max_loops = 10000;
    double tol = 1e-9;
    bool progress = false;
};

void add_learn_options(CLI::App *cmd, LearnOptions &opt) {
    cmd->add_option("--superstructure", opt.superstructure,
                    "Candidate edges: 'complete', 'ns' (neighborhood selection) or an edge-list file")
        ->capture_default_str();
    cmd->add_option("--ns-rho", opt.ns_rho, "Lasso penalty for neighborhood selection (default sqrt(log m / n))");
    cmd->add_option("--lambda-sq", opt.lambda_sq, "Fixed l0 penalty lambda^2; skips the BIC grid")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--bic-grid-max-c", opt.bic_grid_max_c, "BIC grid lambda^2 = c log(m)/n for c = 1..max")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--spacer-c", opt.spacer_c, "Support recurrences before a spacer step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-loops", opt.max_loops, "Cap on full coordinate loops")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", opt.tol, "Objective decrease below which a loop counts as converged")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_flag("--progress", opt.progress, "Stream per-loop objective values to stderr");
}

json learn_config_json(const LearnOptions &opt) {
    json cfg;
    cfg["superstructure"] = opt.superstructure;
    cfg["ns_rho"] = opt.ns_rho ? json(*opt.ns_rho) : json(nullptr);
    cfg["lambda_sq"] = opt.lambda_sq ? json(*opt.lambda_sq) : json(nullptr);
    cfg["bic_grid_max_c"] = opt.bic_grid_max_c;
    cfg["spacer_c"] = opt.spacer_c;
    cfg["max_loops"] = opt.max_loops;
    cfg["tol"] = opt.tol;
    return cfg;
}

SuperStructure build_superstructure(const std::string &choice, const CovMatrix &sigma, Index n,
                                    std::optional<double> ns_rho) {
    const int m = static_cast<int>(sigma.dim());
    if (choice == "complete") return complete_superstructure(m);
    if (choice == "ns") {
        NsConfig ns;
        ns.rho = ns_rho ? *ns_rho : default_ns_rho(m, n);
        return neighborhood_selection(sigma, ns);
    }
    if (!fs::exists(choice)) throw UsageError("--superstructure: expected 'complete', 'ns' or an existing file, got '" +
                                            choice + "'");
    return io::read_superstructure(choice, m);
}

struct LearnOutcome {
    SolveResult result;
    double lambda_sq = 0.0;
    std::optional<double> bic;
};

LearnOutcome learn_from_covariance(const CovMatrix &sigma, const SuperStructure &e_super, Index n,
                                   const LearnOptions &opt, std::size_t workers) {
    SolverConfig config;
    config.spacer_threshold_c = opt.spacer_c;
    config.max_full_loops = opt.max_loops;
    config.objective_tol = opt.tol;
    if (opt.lambda_sq) {
        config.lambda_sq = *opt.lambda_sq;
        LoopCallback progress;
        if (opt.progress) {
            progress = [](int loop, double objective) {
                std::cerr << "loop " << loop << " objective " << io::format_double(objective) << '\n';
            };
        }
        return {cd_solve(sigma, e_super, config, progress), *opt.lambda_sq, std::nullopt};
    }
    const auto grid = LambdaGrid::integer_grid(sigma.dim(), n, opt.bic_grid_max_c);
    Selection sel = select_lambda(sigma, e_super, n, grid, config, workers);
    if (opt.progress) {
        const auto lambdas = grid.lambda_sq_values();
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            std::cerr << "lambda_sq " << io::format_double(lambdas[i]) << " bic "
                      << io::format_double(sel.grid_bic[i]) << '\n';
        }
    }
    return {std::move(sel.result), sel.lambda_sq, sel.bic};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json edges_json(const EdgeList &edges) {
    auto arr = json::array();
    for (const auto &e : edges) arr.push_back({e.from, e.to});
    return arr;
}

double mean(const std::vector<double> &v) {
    if (v.empty()) return std::nan("");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// population standard deviation, so a single replication reports 0
double stddev(const std::vector<double> &v) {
    if (v.empty()) return std::nan("");
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string csv_number(double x) { return std::isnan(x) ? std::string() : io::format_double(x); }

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io::FormatError("cannot create output directory " + dir.string() + ": " + ec.message());
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    int m = 0;
    int edges = 0;
    long n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_simulate(const SimulateArgs &a) {
    const DirectedGraph dag = random_dag(a.m, a.edges, a.seed);
    const SemParams sem = random_sem(dag, a.seed);
    const Dataset data = simulate(sem, a.n, a.seed);

    const fs::path out(a.out);
    ensure_dir(out);
    io::write_dataset_csv(out / "data.csv", data);
    json sem_doc = io::sem_to_json(sem);
    sem_doc["seed"] = a.seed;
    io::write_json(out / "sem.json", sem_doc);
    io::write_edge_list(out / "dag.txt", dag.edges(), a.m);
    std::cout << "wrote " << data.n() << "x" << data.m() << " dataset to " << (out / "data.csv").string() << '\n';
    return ok;
}

// ---------------------------------------------------------------- learn

struct LearnArgs {
    std::string data;
    std::string out;
    std::string truth;
    std::uint64_t seed = 0;
    bool no_timing = false;
    LearnOptions opt;
};

int cmd_learn(const LearnArgs &a) {
    const auto start = std::chrono::steady_clock::now();
    const Dataset data = io::read_dataset_csv(a.data);
    const int m = static_cast<int>(data.m());
    std::optional<DirectedGraph> truth;
    if (!a.truth.empty()) truth = io::read_dag(a.truth, m);

    const CovMatrix sigma = sample_covariance(data);
    const SuperStructure e_super = build_superstructure(a.opt.superstructure, sigma, data.n(), a.opt.ns_rho);
    const LearnOutcome outcome = learn_from_covariance(sigma, e_super, data.n(), a.opt, worker_count());
    const SolveResult &r = outcome.result;

    const DirectedGraph estimate = DirectedGraph::from_edges(m, r.support);
    const Cpdag cpdag = dag_to_cpdag(estimate);

    const fs::path out(a.out);
    ensure_dir(out);
    io::write_matrix_csv(out / "gamma.csv", r.gamma_hat.matrix());
    io::write_edge_list(out / "dag.txt", r.support, m);
    io::write_cpdag_csv(out / "cpdag.csv", cpdag);

    json report;
    report["schema_version"] = kReportSchemaVersion;
    report["command"] = "learn";
    report["data"] = a.data;
    report["n"] = data.n();
    report["m"] = m;
    report["seed"] = a.seed;
    report["config"] = learn_config_json(a.opt);
    report["superstructure_pairs"] = e_super.num_pairs();
    report["lambda_sq"] = outcome.lambda_sq;
    report["bic"] = outcome.bic ? json(*outcome.bic) : json(nullptr);
    report["objective"] = r.objective();
    report["support_size"] = r.support.size();
    report["edges"] = edges_json(r.support);
    report["converged"] = r.converged;
    report["full_loops"] = r.full_loops;
    report["spacer_steps"] = r.spacer_steps_taken;
    report["d_cpdag"] = truth ? json(d_cpdag(cpdag, dag_to_cpdag(*truth))) : json(nullptr);
    report["wall_seconds"] = a.no_timing ? json(nullptr) : json(seconds_since(start));
    io::write_json(out / "report.json", report);
    std::cout << report.dump(2) << '\n';

    if (!r.converged) {
        std::cerr << "learn: solver hit --max-loops " << a.opt.max_loops << " without converging\n";
        return not_converged;
    }
    return ok;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string estimate;
    std::string truth;
    int m = 0;
};

Cpdag load_as_cpdag(const std::string &path, int m) {
    if (fs::path(path).extension() == ".csv") {
        Cpdag c = io::read_cpdag_csv(path);
        if (c.num_nodes() != m) throw io::FormatError(path + ": CPDAG has wrong dimension");
        return c;
    }
    return dag_to_cpdag(io::read_dag(path, m));
}

int cmd_evaluate(const EvaluateArgs &a) {
    const Cpdag est = load_as_cpdag(a.estimate, a.m);
    const Cpdag tru = load_as_cpdag(a.truth, a.m);
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["command"] = "evaluate";
    doc["d_cpdag"] = d_cpdag(est, tru);
    std::cout << doc.dump(2) << '\n';
    return ok;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    std::string data;
    std::string superstructure = "complete";
    std::optional<double> lambda_sq;
    std::string out;
};

int cmd_oracle(const OracleArgs &a) {
    const Dataset data = io::read_dataset_csv(a.data);
    if (data.m() > kOracleMaxNodes) {
        throw UsageError("oracle: " + std::to_string(data.m()) + " variables exceeds the exhaustive-search limit of " +
                         std::to_string(kOracleMaxNodes));
    }
    const CovMatrix sigma = sample_covariance(data);
    const SuperStructure e_super = build_superstructure(a.superstructure, sigma, data.n(), std::nullopt);
    const double lambda_sq =
        a.lambda_sq ? *a.lambda_sq : std::log(static_cast<double>(data.m())) / static_cast<double>(data.n());
    const OracleResult res = brute_force_solve(sigma, e_super, lambda_sq);

    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["command"] = "oracle";
    doc["data"] = a.data;
    doc["lambda_sq"] = lambda_sq;
    doc["optimal_objective"] = res.optimal_objective;
    doc["optimal_support"] = edges_json(res.optimal_support);
    doc["num_dags_enumerated"] = res.num_dags_enumerated;
    if (!a.out.empty()) {
        ensure_dir(a.out);
        io::write_json(fs::path(a.out) / "oracle.json", doc);
    }
    std::cout << doc.dump(2) << '\n';
    return ok;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    int m = 0;
    int edges = 0;
    std::vector<long> n_values;
    int replications = 10;
    std::uint64_t seed = 0;
    std::string out;
    bool no_timing = false;
    LearnOptions opt;
};

struct RunRow {
    long n = 0;
    int replication = 0;
    std::uint64_t data_seed = 0;
    double lambda_sq = 0.0;
    double objective = 0.0;
    std::size_t support_size = 0;
    int d_cpdag = 0;
    double seconds = 0.0;
    bool converged = false;
    double oracle_objective = std::nan("");
    double normalized_gap = std::nan("");
};

int cmd_benchmark(const BenchmarkArgs &a) {
    if (a.opt.superstructure != "complete" && a.opt.superstructure != "ns") {
        throw UsageError("benchmark: --superstructure must be 'complete' or 'ns'");
    }
    const DirectedGraph dag = random_dag(a.m, a.edges, a.seed);
    const SemParams sem = random_sem(dag, a.seed);
    const Cpdag true_cpdag = dag_to_cpdag(dag);
    const bool with_oracle = a.m <= kOracleMaxNodes;

    std::vector<RunRow> rows;
    for (long n : a.n_values)
        for (int r = 0; r < a.replications; ++r) rows.push_back({n, r, derive_seed(a.seed, r + 1)});

    parallel_for(rows.size(), [&](std::size_t i) {
        RunRow &row = rows[i];
        const auto start = std::chrono::steady_clock::now();
        const Dataset data = simulate(sem, row.n, row.data_seed);
        const CovMatrix sigma = sample_covariance(data);
        const SuperStructure e_super = build_superstructure(a.opt.superstructure, sigma, row.n, a.opt.ns_rho);
        LearnOptions quiet = a.opt;
        quiet.progress = false;
        const LearnOutcome outcome = learn_from_covariance(sigma, e_super, row.n, quiet, 1);
        row.seconds = seconds_since(start);
        row.lambda_sq = outcome.lambda_sq;
        row.objective = outcome.result.objective();
        row.support_size = outcome.result.support.size();
        row.converged = outcome.result.converged;
        row.d_cpdag = d_cpdag(dag_to_cpdag(DirectedGraph::from_edges(a.m, outcome.result.support)), true_cpdag);
        if (with_oracle) {
            row.oracle_objective = brute_force_solve(sigma, e_super, outcome.lambda_sq).optimal_objective;
            row.normalized_gap = (row.objective - row.oracle_objective) / std::abs(row.oracle_objective);
        }
    });

    const fs::path out(a.out);
    ensure_dir(out);
    {
        std::ofstream runs(out / "runs.csv", std::ios::binary | std::ios::trunc);
        runs << "n,replication,data_seed,lambda_sq,objective,support_size,d_cpdag,seconds,converged,"
                "oracle_objective,normalized_gap\n";
        for (const auto &row : rows) {
            runs << row.n << ',' << row.replication << ',' << row.data_seed << ',' << io::format_double(row.lambda_sq)
                 << ',' << io::format_double(row.objective) << ',' << row.support_size << ',' << row.d_cpdag << ','
                 << (a.no_timing ? std::string() : io::format_double(row.seconds)) << ',' << row.converged << ','
                 << csv_number(row.oracle_objective) << ',' << csv_number(row.normalized_gap) << '\n';
        }
    }

    json summary = json::array();
    std::ofstream sum_csv(out / "summary.csv", std::ios::binary | std::ios::trunc);
    sum_csv << "n,replications,d_cpdag_mean,d_cpdag_std,seconds_mean,seconds_std,gap_mean,gap_median\n";
    bool all_converged = true;
    for (long n : a.n_values) {
        std::vector<double> d, t, gap;
        for (const auto &row : rows) {
            if (row.n != n) continue;
            d.push_back(row.d_cpdag);
            t.push_back(row.seconds);
            if (with_oracle) gap.push_back(row.normalized_gap);
            all_converged = all_converged && row.converged;
        }
        const double t_mean = a.no_timing ? std::nan("") : mean(t);
        const double t_std = a.no_timing ? std::nan("") : stddev(t);
        sum_csv << n << ',' << d.size() << ',' << io::format_double(mean(d)) << ',' << io::format_double(stddev(d))
                << ',' << csv_number(t_mean) << ',' << csv_number(t_std) << ',' << csv_number(mean(gap)) << ','
                << csv_number(median(gap)) << '\n';
        json entry;
        entry["n"] = n;
        entry["d_cpdag_mean"] = mean(d);
        entry["d_cpdag_std"] = stddev(d);
        entry["seconds_mean"] = a.no_timing ? json(nullptr) : json(t_mean);
        entry["seconds_std"] = a.no_timing ? json(nullptr) : json(t_std);
        entry["gap_mean"] = with_oracle ? json(mean(gap)) : json(nullptr);
        entry["gap_median"] = with_oracle ? json(median(gap)) : json(nullptr);
        summary.push_back(entry);
    }

    json report;
    report["schema_version"] = kReportSchemaVersion;
    report["command"] = "benchmark";
    report["m"] = a.m;
    report["edges"] = a.edges;
    report["replications"] = a.replications;
    report["seed"] = a.seed;
    report["config"] = learn_config_json(a.opt);
    report["true_edges"] = edges_json(dag.edges());
    report["summary"] = summary;
    report["all_converged"] = all_converged;
    io::write_json(out / "report.json", report);
    std::cout << report["summary"].dump(2) << '\n';
    return all_converged ? ok : not_converged;
}

} // namespace

int run(const std::vector<std::string> &args) {
    CLI::App app{"l0-penalized coordinate descent for linear Gaussian Bayesian networks", "l0dag"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *simulate_cmd = app.add_subcommand("simulate", "Draw a random DAG, SEM weights and a dataset");
    simulate_cmd->add_option("--m", sim.m, "Number of variables")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--edges", sim.edges, "Number of DAG edges")->required()->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--n", sim.n, "Sample size")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate_cmd->add_option("--out", sim.out, "Output directory")->required();

    LearnArgs learn;
    auto *learn_cmd = app.add_subcommand("learn", "Estimate a DAG and its CPDAG from data");
    learn_cmd->add_option("--data", learn.data, "Dataset CSV")->required();
    learn_cmd->add_option("--out", learn.out, "Output directory")->required();
    learn_cmd->add_option("--truth", learn.truth, "True DAG edge list; adds d_cpdag to the report");
    learn_cmd->add_option("--seed", learn.seed, "Recorded in the report")->capture_default_str();
    learn_cmd->add_flag("--no-timing", learn.no_timing, "Omit wall-clock fields so reports are byte-stable");
    add_learn_options(learn_cmd, learn.opt);

    EvaluateArgs eval;
    auto *evaluate_cmd = app.add_subcommand("evaluate", "d_cpdag between an estimate and the truth");
    evaluate_cmd->add_option("--estimate", eval.estimate, "DAG edge list or CPDAG .csv")->required();
    evaluate_cmd->add_option("--truth", eval.truth, "DAG edge list or CPDAG .csv")->required();
    evaluate_cmd->add_option("--m", eval.m, "Number of variables")->required()->check(CLI::PositiveNumber);

    OracleArgs orc;
    auto *oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for at most 5 variables");
    oracle_cmd->add_option("--data", orc.data, "Dataset CSV")->required();
    oracle_cmd->add_option("--superstructure", orc.superstructure, "'complete', 'ns' or an edge-list file")
        ->capture_default_str();
    oracle_cmd->add_option("--lambda-sq", orc.lambda_sq, "l0 penalty (default log(m)/n)")
        ->check(CLI::NonNegativeNumber);
    oracle_cmd->add_option("--out", orc.out, "Optional output directory for oracle.json");

    BenchmarkArgs bench;
    auto *bench_cmd = app.add_subcommand("benchmark", "Replicated simulate-and-learn runs on one random DAG");
    bench_cmd->add_option("--m", bench.m, "Number of variables")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--edges", bench.edges, "Number of DAG edges")->required()->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--n", bench.n_values, "Sample sizes")->required()->check(CLI::Range(2L, 100000000L));
    bench_cmd->add_option("--replications", bench.replications, "Datasets per sample size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Output directory")->required();
    bench_cmd->add_flag("--no-timing", bench.no_timing, "Omit wall-clock fields so outputs are byte-stable");
    add_learn_options(bench_cmd, bench.opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*simulate_cmd) return cmd_simulate(sim);
        if (*learn_cmd) return cmd_learn(learn);
        if (*evaluate_cmd) return cmd_evaluate(eval);
        if (*oracle_cmd) return cmd_oracle(orc);
        if (*bench_cmd) return cmd_benchmark(bench);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

} // namespace l0dag::cli
