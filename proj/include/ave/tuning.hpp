/**
 * @file
 * @brief Grid search for the experimentally optimal α of the HSS-type solvers.
 */

#pragma once

#include "ave/alpha_table.hpp"
#include "ave/core.hpp"
#include "ave/solvers.hpp"

#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ave {

struct GridSpec {
    std::vector<double> alphas;

    /// 0.1, 0.2, ..., 4.0
    [[nodiscard]] static GridSpec standard() { return range(0.1, 4.0, 0.1); }

    /// lo, lo+step, ... up to hi inclusive (with rounding slack); values are rounded to 12 significant digits.
    [[nodiscard]] static GridSpec range(double lo, double hi, double step) {
        if (!(step > 0.0) || !(lo > 0.0) || hi < lo) {
            throw std::invalid_argument("GridSpec: need 0 < lo <= hi and step > 0");
        }
        GridSpec g;
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            const double v = lo + static_cast<double>(i) * step;
            g.alphas.push_back(std::stod(to_short(v)));
        }
        g.validate();
        return g;
    }

    /// Accepts "lo:hi:step" or a comma-separated list.
    [[nodiscard]] static GridSpec parse(const std::string &text) {
        if (text.find(':') != std::string::npos) {
            std::istringstream in(text);
            std::string a, b, c;
            if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
                throw std::invalid_argument("GridSpec: expected lo:hi:step, got '" + text + "'");
            }
            return range(std::stod(a), std::stod(b), std::stod(c));
        }
        GridSpec g;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            g.alphas.push_back(std::stod(item));
        }
        g.validate();
        return g;
    }

    void validate() const {
        if (alphas.empty()) {
            throw std::invalid_argument("GridSpec: grid must not be empty");
        }
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i])) {
                throw std::invalid_argument("GridSpec: alphas must be positive and finite");
            }
            if (i > 0 && !(alphas[i] > alphas[i - 1])) {
                throw std::invalid_argument("GridSpec: alphas must be strictly increasing");
            }
        }
    }

  private:
    static std::string to_short(double v) {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    }
};

struct TuneEntry {
    double alpha;
    std::size_t iterations;
    double wall_time;
    SolveStatus status;
};

struct TuneReport {
    double best_alpha{ 0.0 };
    std::vector<TuneEntry> per_alpha;
    /// Set when a wall-time difference (not the iteration count or α order) picked the winner.
    bool time_broken_tie{ false };
};

class tuning_error : public std::runtime_error {
  public:
    tuning_error(const std::string &what, std::vector<TuneEntry> table) :
        std::runtime_error(what), per_alpha(std::move(table)) {}

    std::vector<TuneEntry> per_alpha;
};

/// Wall times closer than this (relative) are treated as equal.
inline constexpr double tune_time_tolerance = 0.10;

/**
 * @brief Runs the solver once per grid α and picks the best converged run.
 *
 * Ranking: fewest iterations, then clearly shorter wall time, then smaller α.
 */
template <Scalar T>
[[nodiscard]] TuneReport tune_alpha(const AveProblem<T> &p, Method method, const GridSpec &grid, const PicardHssOptions<T> &opts = {}, bool parallel = false) {
    grid.validate();
    if (method == Method::Picard) {
        throw std::invalid_argument("tune_alpha: Picard has no alpha parameter");
    }
    TuneReport rep;
    rep.per_alpha.resize(grid.alphas.size());
    const auto run = [&](std::size_t i) {
        const double a = grid.alphas[i];
        const auto r = solve(p, method, a, opts);
        return TuneEntry{ a, r.total_iterations, r.wall_time, r.status };
    };
    if (parallel) {
        std::vector<std::future<TuneEntry>> jobs;
        jobs.reserve(grid.alphas.size());
        for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, run, i));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            rep.per_alpha[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
            rep.per_alpha[i] = run(i);
        }
    }

    const TuneEntry *best = nullptr;
    for (const TuneEntry &e : rep.per_alpha) {
        if (e.status != SolveStatus::Converged) {
            continue;
        }
        if (best == nullptr || e.iterations < best->iterations) {
            best = &e;
            rep.time_broken_tie = false;
            continue;
        }
        if (e.iterations > best->iterations) {
            continue;
        }
        // equal counts; grid order means e.alpha > best->alpha
        const double scale = std::max(e.wall_time, best->wall_time);
        const bool clearly_faster = scale > 0.0 && (best->wall_time - e.wall_time) > tune_time_tolerance * scale;
        if (clearly_faster) {
            best = &e;
            rep.time_broken_tie = true;
        }
    }
    if (best == nullptr) {
        throw tuning_error("tune_alpha: no alpha in the grid converged", rep.per_alpha);
    }
    rep.best_alpha = best->alpha;
    return rep;
}

}  // namespace ave
