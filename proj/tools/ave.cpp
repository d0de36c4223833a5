// Command-line front end: gen, solve, bench, tune, oracle-check.
//
// Exit codes: 0 success, 1 usage/internal/factorization error, 2 non-convergence.

#include "ave/bench.hpp"
#include "ave/io.hpp"
#include "ave/oracle.hpp"
#include "ave/problems.hpp"
#include "ave/solvers.hpp"
#include "ave/tuning.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using C = std::complex<double>;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_not_converged = 2;

struct SpecArgs {
    std::size_t m{ 10 };
    double q{ 0.0 };
    double p{ 0.0 };

    void add_to(CLI::App &cmd) {
        cmd.add_option("--m", m, "grid points per dimension (n = m^2)")->capture_default_str();
        cmd.add_option("--q", q, "convection magnitude")->capture_default_str();
        cmd.add_option("--p", p, "diagonal shift")->capture_default_str();
    }

    [[nodiscard]] ave::ConvDiffSpec spec() const { return { m, q, p }; }
};

struct SolverArgs {
    double tol{ 1e-5 };
    std::size_t max_outer{ 500 };
    double eta{ 0.1 };
    std::size_t max_inner{ 100 };

    void add_to(CLI::App &cmd) {
        cmd.add_option("--tol", tol, "relative residual tolerance")->capture_default_str();
        cmd.add_option("--max-outer", max_outer, "maximum outer iterations")->capture_default_str();
        cmd.add_option("--eta", eta, "Picard-HSS inner tolerance")->capture_default_str();
        cmd.add_option("--max-inner", max_inner, "Picard-HSS inner iteration cap")->capture_default_str();
    }

    template <ave::Scalar T>
    [[nodiscard]] ave::PicardHssOptions<T> options() const {
        ave::PicardHssOptions<T> o;
        o.base.tol = tol;
        o.base.max_outer = max_outer;
        o.eta = eta;
        o.max_inner = max_inner;
        return o;
    }
};

ave::Method require_method(const std::string &s) {
    const auto m = ave::parse_method(s);
    if (!m) {
        throw CLI::ValidationError("--method", "unknown method '" + s + "' (picard, picard-hss, hss-like, hss-like-residual)");
    }
    return *m;
}

std::vector<ave::AlphaEntry> load_alpha_table(const std::string &path) {
    if (path.empty()) {
        return ave::default_alpha_table();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open alpha table '" + path + "'");
    }
    return ave::alpha_table_from_json(json::parse(in));
}

template <ave::Scalar T>
json vec_json(const ave::Vector<T> &x) {
    return ave::io::vector_to_json(x);
}

// ---------------------------------------------------------------------------

int cmd_gen(const SpecArgs &s, const std::string &out_dir) {
    const auto spec = s.spec();
    const auto prob = ave::build_problem(spec);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto A = ave::build_matrix(spec);
    ave::io::save_matrix_market(dir / "A.mtx", A);
    ave::io::save_vector(dir / "b.txt", prob.b());
    ave::io::save_vector(dir / "x_exact.txt", *prob.exact());

    json manifest = {
        { "spec", { { "m", spec.m }, { "q", spec.q }, { "p", spec.p } } },
        { "n", spec.n() },
        { "nnz", A.nnz() },
        { "reynolds", spec.reynolds() },
        { "files",
          { { "matrix", { { "path", "A.mtx" }, { "fnv1a64", ave::io::file_checksum(dir / "A.mtx") } } },
            { "rhs", { { "path", "b.txt" }, { "fnv1a64", ave::io::file_checksum(dir / "b.txt") } } },
            { "exact", { { "path", "x_exact.txt" }, { "fnv1a64", ave::io::file_checksum(dir / "x_exact.txt") } } } } },
    };
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
    std::cout << manifest.dump(2) << '\n';
    return exit_ok;
}

template <ave::Scalar T>
int run_solve(const ave::AveProblem<T> &prob, ave::Method method, double alpha, const SolverArgs &sargs, const std::string &x_out) {
    const auto rep = ave::solve(prob, method, alpha, sargs.options<T>());
    const auto res = ave::ave_residual(prob, rep.x);
    json j = {
        { "method", ave::to_string(method) },
        { "alpha", method == ave::Method::Picard ? json(nullptr) : json(alpha) },
        { "n", prob.size() },
        { "status", ave::to_string(rep.status) },
        { "outer_iterations", rep.outer_iterations },
        { "inner_iterations", rep.inner_iterations },
        { "inner_iterations_mean", rep.mean_inner() },
        { "total_iterations", rep.total_iterations },
        { "relative_residual", res.relative },
        { "absolute_residual", res.absolute },
        { "residual_history", rep.residual_history },
        { "wall_time", rep.wall_time },
    };
    if (!rep.message.empty()) {
        j["message"] = rep.message;
    }
    if (prob.exact()) {
        const auto err = ave::subtract(rep.x, *prob.exact());
        j["error_vs_exact"] = ave::norm2(err) / std::max(1.0, ave::norm2(*prob.exact()));
    }
    if (!x_out.empty()) {
        ave::io::save_vector(x_out, rep.x);
        j["x_path"] = x_out;
    }
    std::cout << j.dump(2) << '\n';
    switch (rep.status) {
        case ave::SolveStatus::Converged:
            return exit_ok;
        case ave::SolveStatus::FactorizationFailure:
            return exit_error;
        default:
            return exit_not_converged;
    }
}

int cmd_solve(const SpecArgs &s, const std::string &matrix, const std::string &rhs, const std::string &method_name, const std::string &alpha_arg,
              const std::string &alpha_table, const SolverArgs &sargs, const std::string &x_out) {
    const ave::Method method = require_method(method_name);
    const auto resolve_alpha = [&](bool have_spec) {
        if (method == ave::Method::Picard) {
            return 0.0;
        }
        if (alpha_arg == "table") {
            if (!have_spec) {
                throw CLI::ValidationError("--alpha", "'table' requires a generated problem (--m/--q/--p)");
            }
            const auto a = ave::table_alpha(method, s.p, s.q, s.m, load_alpha_table(alpha_table));
            if (!a) {
                throw CLI::ValidationError("--alpha", "no alpha table entry for this (p, q, m)");
            }
            return *a;
        }
        const auto src = ave::BenchConfig::parse_alpha_source(alpha_arg);
        if (const auto *f = std::get_if<ave::AlphaFixed>(&src)) {
            return f->value;
        }
        throw CLI::ValidationError("--alpha", "solve accepts a number or 'table'");
    };

    if (!matrix.empty() || !rhs.empty()) {
        if (matrix.empty() || rhs.empty()) {
            throw CLI::ValidationError("--matrix/--rhs", "both files are required");
        }
        const double alpha = resolve_alpha(false);
        const auto raw = ave::io::load_raw_vector(rhs);
        if (ave::io::matrix_market_is_complex(matrix) || raw.has_complex) {
            auto A = ave::io::matrix_market_is_complex(matrix) ? ave::io::load_matrix_market<C>(matrix) : ave::io::load_matrix_market<double>(matrix).promote<C>();
            return run_solve(ave::AveProblem<C>(std::move(A), ave::io::to_field<C>(raw)), method, alpha, sargs, x_out);
        }
        return run_solve(ave::AveProblem<double>(ave::io::load_matrix_market<double>(matrix), ave::io::to_field<double>(raw)), method, alpha, sargs, x_out);
    }
    return run_solve(ave::build_problem(s.spec()), method, resolve_alpha(true), sargs, x_out);
}

void emit_bench(const ave::BenchReport &rep, const std::string &format, std::ostream &out) {
    if (format == "csv") {
        ave::write_bench_csv(out, rep);
    } else if (format == "md") {
        ave::write_bench_markdown(out, rep);
    } else {
        out << ave::bench_to_json(rep).dump(2) << '\n';
    }
}

int cmd_bench(ave::BenchConfig cfg, const std::string &format, const std::string &out_path) {
    const auto rep = ave::run_bench(cfg);
    if (out_path.empty()) {
        emit_bench(rep, format, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot open '" + out_path + "' for writing");
        }
        emit_bench(rep, format, out);
    }
    if (cfg.parallel) {
        std::cerr << "note: rows ran concurrently; cpu columns include contention\n";
    }
    return exit_ok;
}

int cmd_tune(const SpecArgs &s, const std::string &method_name, const std::string &grid_text, const SolverArgs &sargs, const std::string &format, bool parallel) {
    const ave::Method method = require_method(method_name);
    const auto grid = ave::GridSpec::parse(grid_text);
    const auto prob = ave::build_problem(s.spec());
    const auto emit_table = [&](const std::vector<ave::TuneEntry> &table, std::optional<double> best, bool tie) {
        if (format == "csv") {
            std::cout << "alpha,iterations,wall_time,status\n";
            for (const auto &e : table) {
                std::cout << ave::io::format_double(e.alpha) << ',' << e.iterations << ',' << ave::io::format_double(e.wall_time) << ',' << ave::to_string(e.status) << '\n';
            }
            return;
        }
        json rows = json::array();
        for (const auto &e : table) {
            rows.push_back({ { "alpha", e.alpha }, { "iterations", e.iterations }, { "wall_time", e.wall_time }, { "status", ave::to_string(e.status) } });
        }
        json j = { { "method", ave::to_string(method) },
                   { "spec", { { "m", s.m }, { "q", s.q }, { "p", s.p } } },
                   { "best_alpha", best ? json(*best) : json(nullptr) },
                   { "time_broken_tie", tie },
                   { "per_alpha", rows } };
        std::cout << j.dump(2) << '\n';
    };
    try {
        const auto rep = ave::tune_alpha(prob, method, grid, sargs.options<C>(), parallel);
        emit_table(rep.per_alpha, rep.best_alpha, rep.time_broken_tie);
        return exit_ok;
    } catch (const ave::tuning_error &e) {
        emit_table(e.per_alpha, std::nullopt, false);
        std::cerr << "error: " << e.what() << '\n';
        return exit_not_converged;
    }
}

int cmd_oracle(const std::string &matrix, const std::string &rhs, std::size_t n_limit) {
    if (ave::io::matrix_market_is_complex(matrix)) {
        throw std::invalid_argument("oracle-check: complex matrices are outside the oracle's domain");
    }
    const auto raw = ave::io::load_raw_vector(rhs);
    if (raw.has_complex) {
        throw std::invalid_argument("oracle-check: complex right-hand sides are outside the oracle's domain");
    }
    const auto A = ave::io::load_matrix_market<double>(matrix);
    const auto b = ave::io::to_field<double>(raw);
    const auto res = ave::sign_enumeration_solve(A, b, n_limit);
    json sols = json::array();
    for (const auto &x : res.solutions) {
        sols.push_back(x);
    }
    const double smin = ave::min_singular_value(A);
    json j = { { "n", b.size() },
               { "solutions", sols },
               { "count", res.solutions.size() },
               { "exhaustive", res.exhaustive },
               { "unique", res.exhaustive && res.solutions.size() == 1 },
               { "min_singular_value", smin },
               { "min_singular_exceeds_one", ave::min_singular_exceeds_one(A) } };
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Solvers and benchmarks for the absolute value equation Ax - |x| = b" };
    app.require_subcommand(1);

    // gen
    SpecArgs gen_spec;
    std::string gen_out = "ave_problem";
    auto *gen = app.add_subcommand("gen", "write a convection-diffusion test problem (Matrix Market + vectors + manifest)");
    gen_spec.add_to(*gen);
    gen->add_option("--out", gen_out, "output directory")->capture_default_str();

    // solve
    SpecArgs solve_spec;
    SolverArgs solve_args;
    std::string solve_matrix, solve_rhs, solve_method = "hss-like", solve_alpha = "table", solve_table, solve_xout;
    auto *solve = app.add_subcommand("solve", "run one solver and print a JSON report");
    solve_spec.add_to(*solve);
    solve_args.add_to(*solve);
    solve->add_option("--matrix", solve_matrix, "Matrix Market file for A");
    solve->add_option("--rhs", solve_rhs, "vector file for b (.txt or .json)");
    solve->add_option("--method", solve_method, "picard | picard-hss | hss-like | hss-like-residual")->capture_default_str();
    solve->add_option("--alpha", solve_alpha, "number or 'table'")->capture_default_str();
    solve->add_option("--alpha-table", solve_table, "JSON alpha table replacing the built-in one");
    solve->add_option("--out", solve_xout, "write the computed solution to this vector file");

    // bench
    std::string bench_config, bench_alpha = "table", bench_table, bench_format = "md", bench_out, bench_grid = "0.1:4.0:0.1";
    std::vector<double> bench_p{ 0.0 }, bench_q{ 0.0, 1.0, 10.0, 100.0 };
    std::vector<std::size_t> bench_m{ 10, 20 };
    std::vector<std::string> bench_methods{ "hss-like", "picard-hss", "picard" };
    SolverArgs bench_args;
    bool bench_parallel = false;
    auto *bench = app.add_subcommand("bench", "sweep (p, q, m, method) and report IT / CPU / RES");
    bench->add_option("--config", bench_config, "JSON config (keys mirror the flags)");
    bench->add_option("--p", bench_p, "p values")->delimiter(',')->capture_default_str();
    bench->add_option("--q", bench_q, "q values")->delimiter(',')->capture_default_str();
    bench->add_option("--m", bench_m, "m values")->delimiter(',')->capture_default_str();
    bench->add_option("--method", bench_methods, "methods")->delimiter(',')->capture_default_str();
    bench->add_option("--alpha", bench_alpha, "'table', 'tune' or a number")->capture_default_str();
    bench->add_option("--alpha-table", bench_table, "JSON alpha table replacing the built-in one");
    bench->add_option("--grid", bench_grid, "tuning grid lo:hi:step or comma list")->capture_default_str();
    bench->add_option("--format", bench_format, "csv | md | json")->check(CLI::IsMember({ "csv", "md", "json" }))->capture_default_str();
    bench->add_option("--out", bench_out, "output file (stdout if omitted)");
    bench->add_flag("--parallel", bench_parallel, "run rows concurrently");
    bench_args.add_to(*bench);

    // tune
    SpecArgs tune_spec;
    SolverArgs tune_args;
    std::string tune_method = "hss-like", tune_grid = "0.1:4.0:0.1", tune_format = "json";
    bool tune_parallel = false;
    auto *tune = app.add_subcommand("tune", "grid search for the alpha with the fewest iterations");
    tune_spec.add_to(*tune);
    tune_args.add_to(*tune);
    tune->add_option("--method", tune_method, "picard-hss | hss-like | hss-like-residual")->capture_default_str();
    tune->add_option("--grid", tune_grid, "lo:hi:step or comma list")->capture_default_str();
    tune->add_option("--format", tune_format, "json | csv")->check(CLI::IsMember({ "csv", "json" }))->capture_default_str();
    tune->add_flag("--parallel", tune_parallel, "evaluate grid points concurrently");

    // oracle-check
    std::string oracle_matrix, oracle_rhs;
    std::size_t oracle_limit = ave::oracle_default_limit;
    auto *oracle = app.add_subcommand("oracle-check", "enumerate all sign patterns of a small real AVE");
    oracle->add_option("--matrix", oracle_matrix, "Matrix Market file (real)")->required();
    oracle->add_option("--rhs", oracle_rhs, "vector file")->required();
    oracle->add_option("--n-limit", oracle_limit, "largest n to enumerate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_spec, gen_out);
        }
        if (solve->parsed()) {
            return cmd_solve(solve_spec, solve_matrix, solve_rhs, solve_method, solve_alpha, solve_table, solve_args, solve_xout);
        }
        if (bench->parsed()) {
            ave::BenchConfig cfg;
            if (!bench_config.empty()) {
                std::ifstream in(bench_config);
                if (!in) {
                    throw std::runtime_error("cannot open config '" + bench_config + "'");
                }
                cfg = ave::BenchConfig::from_json(json::parse(in));
            } else {
                cfg.p_values = bench_p;
                cfg.q_values = bench_q;
                cfg.m_values = bench_m;
                cfg.methods.clear();
                for (const auto &m : bench_methods) {
                    cfg.methods.push_back(require_method(m));
                }
                cfg.alpha_source = ave::BenchConfig::parse_alpha_source(bench_alpha);
                cfg.grid = ave::GridSpec::parse(bench_grid);
                cfg.tol = bench_args.tol;
                cfg.max_outer = bench_args.max_outer;
                cfg.eta = bench_args.eta;
                cfg.max_inner = bench_args.max_inner;
                cfg.parallel = bench_parallel;
            }
            if (!bench_table.empty()) {
                cfg.alpha_table = load_alpha_table(bench_table);
            }
            return cmd_bench(cfg, bench_format, bench_out);
        }
        if (tune->parsed()) {
            return cmd_tune(tune_spec, tune_method, tune_grid, tune_args, tune_format, tune_parallel);
        }
        if (oracle->parsed()) {
            return cmd_oracle(oracle_matrix, oracle_rhs, oracle_limit);
        }
    } catch (const CLI::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
