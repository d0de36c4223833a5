/**
 * @file
 * @brief Benchmark sweeps over the convection-diffusion family and their CSV/Markdown/JSON reports.
 */

#pragma once

#include "ave/alpha_table.hpp"
#include "ave/core.hpp"
#include "ave/io.hpp"
#include "ave/problems.hpp"
#include "ave/solvers.hpp"
#include "ave/tuning.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ave {

struct AlphaFromTable {};
struct AlphaTuned {};
struct AlphaFixed {
    double value;
};
using AlphaSource = std::variant<AlphaFromTable, AlphaTuned, AlphaFixed>;

[[nodiscard]] inline std::vector<AlphaEntry> default_alpha_table() {
    return { reference_alphas.begin(), reference_alphas.end() };
}

[[nodiscard]] inline std::vector<AlphaEntry> alpha_table_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("alpha table: expected a JSON array");
    }
    std::vector<AlphaEntry> out;
    for (const auto &e : j) {
        out.push_back({ e.at("p").get<double>(), e.at("q").get<double>(), e.at("m").get<std::size_t>(), e.at("hss_like").get<double>(),
                        e.at("picard_hss").get<double>() });
    }
    return out;
}

[[nodiscard]] inline nlohmann::json alpha_table_to_json(const std::vector<AlphaEntry> &table) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &e : table) {
        j.push_back({ { "p", e.p }, { "q", e.q }, { "m", e.m }, { "hss_like", e.hss_like }, { "picard_hss", e.picard_hss } });
    }
    return j;
}

struct BenchConfig {
    std::vector<double> p_values{ 0.0 };
    std::vector<double> q_values{ 0.0, 1.0, 10.0, 100.0 };
    std::vector<std::size_t> m_values{ 10, 20 };
    std::vector<Method> methods{ Method::HssLike, Method::PicardHss, Method::Picard };
    AlphaSource alpha_source{ AlphaFromTable{} };
    std::vector<AlphaEntry> alpha_table{ default_alpha_table() };
    GridSpec grid{ GridSpec::standard() };
    double tol{ 1e-5 };
    std::size_t max_outer{ 500 };
    double eta{ 0.1 };
    std::size_t max_inner{ 100 };
    bool parallel{ false };

    void validate() const {
        if (p_values.empty() || q_values.empty() || m_values.empty()) {
            throw std::invalid_argument("bench: p, q and m lists must be nonempty");
        }
        if (methods.empty()) {
            throw std::invalid_argument("bench: at least one method is required");
        }
        if (!(tol > 0.0) || max_outer < 1 || !(eta > 0.0 && eta < 1.0) || max_inner < 1) {
            throw std::invalid_argument("bench: invalid solver options");
        }
        if (const auto *f = std::get_if<AlphaFixed>(&alpha_source); f && !(f->value > 0.0)) {
            throw std::invalid_argument("bench: fixed alpha must be positive");
        }
        if (std::holds_alternative<AlphaFromTable>(alpha_source)) {
            for (const Method meth : methods) {
                if (meth == Method::Picard) {
                    continue;
                }
                for (const double p : p_values) {
                    for (const double q : q_values) {
                        for (const std::size_t m : m_values) {
                            if (!table_alpha(meth, p, q, m, alpha_table)) {
                                std::ostringstream os;
                                os << "bench: alpha table has no entry for p=" << p << " q=" << q << " m=" << m;
                                throw std::invalid_argument(os.str());
                            }
                        }
                    }
                }
            }
        }
        grid.validate();
    }

    /// Keys: p_values, q_values, m_values, methods, alpha ("table" | "tune" | number), alpha_table (array),
    /// tol, max_outer, eta, max_inner, grid, parallel.
    [[nodiscard]] static BenchConfig from_json(const nlohmann::json &j) {
        BenchConfig c;
        if (j.contains("p_values")) {
            c.p_values = j.at("p_values").get<std::vector<double>>();
        }
        if (j.contains("q_values")) {
            c.q_values = j.at("q_values").get<std::vector<double>>();
        }
        if (j.contains("m_values")) {
            c.m_values = j.at("m_values").get<std::vector<std::size_t>>();
        }
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto &s : j.at("methods")) {
                const auto m = parse_method(s.get<std::string>());
                if (!m) {
                    throw std::invalid_argument("bench config: unknown method '" + s.get<std::string>() + "'");
                }
                c.methods.push_back(*m);
            }
        }
        if (j.contains("alpha")) {
            const auto &a = j.at("alpha");
            c.alpha_source = a.is_number() ? AlphaSource{ AlphaFixed{ a.get<double>() } } : parse_alpha_source(a.get<std::string>());
        }
        if (j.contains("alpha_table")) {
            c.alpha_table = alpha_table_from_json(j.at("alpha_table"));
        }
        if (j.contains("tol")) {
            c.tol = j.at("tol").get<double>();
        }
        if (j.contains("max_outer")) {
            c.max_outer = j.at("max_outer").get<std::size_t>();
        }
        if (j.contains("eta")) {
            c.eta = j.at("eta").get<double>();
        }
        if (j.contains("max_inner")) {
            c.max_inner = j.at("max_inner").get<std::size_t>();
        }
        if (j.contains("grid")) {
            c.grid = GridSpec::parse(j.at("grid").get<std::string>());
        }
        if (j.contains("parallel")) {
            c.parallel = j.at("parallel").get<bool>();
        }
        return c;
    }

    [[nodiscard]] static AlphaSource parse_alpha_source(const std::string &s) {
        if (s == "table") {
            return AlphaFromTable{};
        }
        if (s == "tune" || s == "tuned") {
            return AlphaTuned{};
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != s.size() || !(v > 0.0)) {
            throw std::invalid_argument("alpha must be 'table', 'tune' or a positive number, got '" + s + "'");
        }
        return AlphaFixed{ v };
    }
};

struct BenchRow {
    double p{};
    double q{};
    std::size_t m{};
    Method method{ Method::HssLike };
    std::optional<double> alpha;  ///< empty for Picard and for failed tuning
    std::size_t it_out{};
    double it_int_mean{};  ///< Picard-HSS only
    std::size_t it{};
    double res{};      ///< ‖Ax - |x| - b‖₂ / ‖b‖₂, recomputed from the returned x
    double res_abs{};  ///< ‖Ax - |x| - b‖₂
    double res_e6{};   ///< res / 1e-6
    double cpu{};
    std::string status;
    std::string message;

    friend bool operator==(const BenchRow &, const BenchRow &) = default;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

namespace detail {

[[nodiscard]] inline BenchRow run_bench_row(const BenchConfig &cfg, const AveProblem<std::complex<double>> &prob, double p, double q, std::size_t m, Method method) {
    using C = std::complex<double>;
    BenchRow row{};
    row.p = p;
    row.q = q;
    row.m = m;
    row.method = method;
    PicardHssOptions<C> opts;
    opts.base.tol = cfg.tol;
    opts.base.max_outer = cfg.max_outer;
    opts.base.record_history = false;
    opts.eta = cfg.eta;
    opts.max_inner = cfg.max_inner;

    double alpha = 0.0;
    if (method != Method::Picard) {
        if (std::holds_alternative<AlphaFromTable>(cfg.alpha_source)) {
            alpha = *table_alpha(method, p, q, m, cfg.alpha_table);
        } else if (const auto *f = std::get_if<AlphaFixed>(&cfg.alpha_source)) {
            alpha = f->value;
        } else {
            try {
                alpha = tune_alpha(prob, method, cfg.grid, opts).best_alpha;
            } catch (const tuning_error &e) {
                row.status = "TuningFailed";
                row.message = e.what();
                return row;
            }
        }
        row.alpha = alpha;
    }

    const auto rep = solve(prob, method, alpha, opts);
    const auto res = ave_residual(prob, rep.x);
    row.it_out = rep.outer_iterations;
    row.it_int_mean = rep.mean_inner();
    row.it = rep.total_iterations;
    row.res = res.relative;
    row.res_abs = res.absolute;
    row.res_e6 = res.relative / 1e-6;
    row.cpu = rep.wall_time;
    row.status = to_string(rep.status);
    row.message = rep.message;
    return row;
}

}  // namespace detail

/// Rows come out in (p, q, m, method) order regardless of `parallel`.
[[nodiscard]] inline BenchReport run_bench(const BenchConfig &cfg) {
    cfg.validate();
    struct Cell {
        double p, q;
        std::size_t m;
        Method method;
    };
    std::vector<Cell> cells;
    for (const double p : cfg.p_values) {
        for (const double q : cfg.q_values) {
            for (const std::size_t m : cfg.m_values) {
                for (const Method meth : cfg.methods) {
                    cells.push_back({ p, q, m, meth });
                }
            }
        }
    }
    const auto run_cell = [&cfg](const Cell &c) {
        try {
            const auto prob = build_problem({ c.m, c.q, c.p });
            return detail::run_bench_row(cfg, prob, c.p, c.q, c.m, c.method);
        } catch (const std::exception &e) {
            BenchRow row{};
            row.p = c.p;
            row.q = c.q;
            row.m = c.m;
            row.method = c.method;
            row.status = "Error";
            row.message = e.what();
            return row;
        }
    };
    BenchReport rep;
    rep.rows.reserve(cells.size());
    if (cfg.parallel) {
        std::vector<std::future<BenchRow>> jobs;
        for (const Cell &c : cells) {
            jobs.push_back(std::async(std::launch::async, run_cell, c));
        }
        for (auto &j : jobs) {
            rep.rows.push_back(j.get());
        }
    } else {
        for (const Cell &c : cells) {
            rep.rows.push_back(run_cell(c));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// output

inline constexpr const char *bench_csv_header = "p,q,m,method,alpha,it_out,it_int_mean,it,res,res_abs,res_e6,cpu,status,message";

inline void write_bench_csv(std::ostream &out, const BenchReport &rep) {
    using io::format_double;
    out << bench_csv_header << '\n';
    for (const BenchRow &r : rep.rows) {
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out << format_double(r.p) << ',' << format_double(r.q) << ',' << r.m << ',' << to_string(r.method) << ',' << (r.alpha ? format_double(*r.alpha) : "") << ','
            << r.it_out << ',' << format_double(r.it_int_mean) << ',' << r.it << ',' << format_double(r.res) << ',' << format_double(r.res_abs) << ','
            << format_double(r.res_e6) << ',' << format_double(r.cpu) << ',' << r.status << ',' << msg << '\n';
    }
}

[[nodiscard]] inline BenchReport read_bench_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != bench_csv_header) {
        throw io::format_error("bench csv: unexpected header");
    }
    BenchReport rep;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::size_t start = 0;
        for (int k = 0; k < 13; ++k) {
            const auto pos = line.find(',', start);
            if (pos == std::string::npos) {
                throw io::format_error("bench csv: too few fields in '" + line + "'");
            }
            f.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        f.push_back(line.substr(start));
        BenchRow r;
        r.p = std::stod(f[0]);
        r.q = std::stod(f[1]);
        r.m = std::stoul(f[2]);
        const auto meth = parse_method(f[3]);
        if (!meth) {
            throw io::format_error("bench csv: unknown method '" + f[3] + "'");
        }
        r.method = *meth;
        if (!f[4].empty()) {
            r.alpha = std::stod(f[4]);
        }
        r.it_out = std::stoul(f[5]);
        r.it_int_mean = std::stod(f[6]);
        r.it = std::stoul(f[7]);
        r.res = std::stod(f[8]);
        r.res_abs = std::stod(f[9]);
        r.res_e6 = std::stod(f[10]);
        r.cpu = std::stod(f[11]);
        r.status = f[12];
        r.message = f[13];
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

[[nodiscard]] inline nlohmann::json bench_to_json(const BenchReport &rep) {
    nlohmann::json j = nlohmann::json::array();
    for (const BenchRow &r : rep.rows) {
        j.push_back({ { "p", r.p },
                      { "q", r.q },
                      { "m", r.m },
                      { "method", to_string(r.method) },
                      { "alpha", r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json(nullptr) },
                      { "it_out", r.it_out },
                      { "it_int_mean", r.it_int_mean },
                      { "it", r.it },
                      { "res", r.res },
                      { "res_abs", r.res_abs },
                      { "res_e6", r.res_e6 },
                      { "cpu", r.cpu },
                      { "status", r.status },
                      { "message", r.message } });
    }
    return j;
}

/**
 * @brief Markdown tables, one per p, laid out like the classic results
 * tables: method blocks with IT / CPU / RES(×1e-6) rows and one column per m.
 * Non-converged cells print "--".
 */
inline void write_bench_markdown(std::ostream &out, const BenchReport &rep) {
    std::vector<double> ps, qs;
    std::vector<std::size_t> ms;
    std::vector<Method> methods;
    const auto add_unique = [](auto &v, const auto &x) {
        if (std::find(v.begin(), v.end(), x) == v.end()) {
            v.push_back(x);
        }
    };
    for (const auto &r : rep.rows) {
        add_unique(ps, r.p);
        add_unique(qs, r.q);
        add_unique(ms, r.m);
        add_unique(methods, r.method);
    }
    const auto find = [&](double p, double q, std::size_t m, Method meth) -> const BenchRow * {
        for (const auto &r : rep.rows) {
            if (r.p == p && r.q == q && r.m == m && r.method == meth) {
                return &r;
            }
        }
        return nullptr;
    };
    const auto fmt = [](double v, int prec) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(prec);
        os << v;
        return os.str();
    };

    for (const double p : ps) {
        out << "### p = " << p << " (RES x 1e-6)\n\n";
        out << "| q | method | alpha | metric |";
        for (const auto m : ms) {
            out << " m=" << m << " |";
        }
        out << "\n|---|---|---|---|";
        for (std::size_t i = 0; i < ms.size(); ++i) {
            out << "---:|";
        }
        out << '\n';
        for (const double q : qs) {
            for (const Method meth : methods) {
                std::vector<std::string> metrics = meth == Method::PicardHss ? std::vector<std::string>{ "IT_out", "IT_int", "IT", "CPU", "RES" }
                                                                             : std::vector<std::string>{ "IT", "CPU", "RES" };
                for (std::size_t k = 0; k < metrics.size(); ++k) {
                    out << "| " << (k == 0 ? fmt(q, 0) : "") << " | " << (k == 0 ? to_string(meth) : "") << " | ";
                    if (k == 0) {
                        std::string alphas;
                        for (const auto m : ms) {
                            const auto *r = find(p, q, m, meth);
                            if (r && r->alpha) {
                                alphas += (alphas.empty() ? "" : "/") + fmt(*r->alpha, 1);
                            }
                        }
                        out << alphas;
                    }
                    out << " | " << metrics[k] << " |";
                    for (const auto m : ms) {
                        const auto *r = find(p, q, m, meth);
                        std::string cell = "--";
                        if (r && r->status == "Converged") {
                            const auto &name = metrics[k];
                            if (name == "IT_out") {
                                cell = std::to_string(r->it_out);
                            } else if (name == "IT_int") {
                                cell = fmt(r->it_int_mean, 1);
                            } else if (name == "IT") {
                                cell = std::to_string(r->it);
                            } else if (name == "CPU") {
                                cell = fmt(r->cpu, 4);
                            } else {
                                cell = fmt(r->res_e6, 4);
                            }
                        }
                        out << ' ' << cell << " |";
                    }
                    out << '\n';
                }
            }
        }
        out << '\n';
    }
}

}  // namespace ave
