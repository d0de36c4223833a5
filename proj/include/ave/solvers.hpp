/**
 * @file
 * @brief Solvers for the absolute value equation Ax - |x| = b.
 *
 * - picard: A x_{k+1} = |x_k| + b with a single LU of A.
 * - picard_hss: outer Picard steps, each solved inexactly by inner HSS sweeps.
 * - hss_like: the single-level nonlinear HSS-like iteration x_{k+1} = V(U(x_k)).
 * - hss_like_residual_variant: the same iteration written as two residual corrections.
 *
 * All solvers check the relative residual ‖Ax - |x| - b‖₂/‖b‖₂ before every
 * step (so a converged initial guess costs zero iterations) and report
 * Diverged as soon as it exceeds 1e10 or stops being finite.
 */

#pragma once

#include "ave/alpha_table.hpp"
#include "ave/core.hpp"
#include "ave/factor.hpp"
#include "ave/linsolve.hpp"
#include "ave/splitting.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace ave {

template <Scalar T>
struct AveSolveOptions {
    double tol{ 1e-5 };
    std::size_t max_outer{ 500 };
    std::optional<Vector<T>> x0{};
    bool record_history{ true };

    void validate(std::size_t n) const {
        if (!(tol > 0.0)) {
            throw std::invalid_argument("AveSolveOptions: tol must be positive");
        }
        if (max_outer < 1) {
            throw std::invalid_argument("AveSolveOptions: max_outer must be >= 1");
        }
        if (x0 && x0->size() != n) {
            throw dimension_error("AveSolveOptions: x0 has wrong length");
        }
    }
};

template <Scalar T>
struct PicardHssOptions {
    AveSolveOptions<T> base{};
    double eta{ 0.1 };
    std::size_t max_inner{ 100 };

    void validate(std::size_t n) const {
        base.validate(n);
        if (!(eta > 0.0 && eta < 1.0)) {
            throw std::invalid_argument("PicardHssOptions: eta must lie in (0, 1)");
        }
        if (max_inner < 1) {
            throw std::invalid_argument("PicardHssOptions: max_inner must be >= 1");
        }
    }
};

namespace detail {

using clock = std::chrono::steady_clock;

template <Scalar T>
class Driver {
  public:
    Driver(const AveProblem<T> &p, const AveSolveOptions<T> &opts) :
        p_{ p }, opts_{ opts }, start_{ clock::now() } {
        opts.validate(p.size());
        rep_.x = opts.x0 ? *opts.x0 : Vector<T>(p.size(), T{});
        const double nb = norm2(p.b());
        scale_ = nb > 0.0 ? nb : 1.0;
    }

    SolveReport<T> &report() { return rep_; }

    /// Evaluates the residual at the current iterate; returns a terminal status or nullopt to keep going.
    std::optional<SolveStatus> check() {
        const auto res = ave_residual(p_, rep_.x);
        if (opts_.record_history || rep_.residual_history.empty()) {
            rep_.residual_history.push_back(res.absolute);
        } else {
            rep_.residual_history.back() = res.absolute;
        }
        if (!res.finite || !std::isfinite(res.absolute) || res.absolute > divergence_factor * scale_) {
            return SolveStatus::Diverged;
        }
        if (res.absolute <= opts_.tol * scale_) {
            return SolveStatus::Converged;
        }
        if (rep_.outer_iterations >= opts_.max_outer) {
            return SolveStatus::MaxIterations;
        }
        return std::nullopt;
    }

    SolveReport<T> finish(SolveStatus s, bool two_level = false) {
        rep_.status = s;
        if (two_level) {
            rep_.total_iterations = 0;
            for (const auto c : rep_.inner_iterations) {
                rep_.total_iterations += c;
            }
        } else {
            rep_.total_iterations = rep_.outer_iterations;
        }
        rep_.wall_time = std::chrono::duration<double>(clock::now() - start_).count();
        return std::move(rep_);
    }

    SolveReport<T> fail(const factorization_error &e) {
        rep_.message = e.what();
        return finish(SolveStatus::FactorizationFailure);
    }

  private:
    const AveProblem<T> &p_;
    const AveSolveOptions<T> &opts_;
    clock::time_point start_;
    double scale_{ 1.0 };
    SolveReport<T> rep_;
};

/// Runs x <- step(x) under the shared stopping rules.
template <Scalar T, typename Step>
SolveReport<T> run_single_level(Driver<T> &d, Step &&step) {
    auto &rep = d.report();
    for (;;) {
        if (const auto s = d.check()) {
            return d.finish(*s);
        }
        rep.x = step(rep.x);
        ++rep.outer_iterations;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Picard

template <Scalar T>
[[nodiscard]] SolveReport<T> picard(const AveProblem<T> &p, const AveSolveOptions<T> &opts = {}) {
    detail::Driver<T> d(p, opts);
    LuFactor<T> lu;
    try {
        lu = lu_factor(p.A());
    } catch (const factorization_error &e) {
        return d.fail(e);
    }
    return detail::run_single_level(d, [&](const Vector<T> &x) {
        Vector<T> rhs = abs_vec(x);
        axpy<T>(T{ 1 }, p.b(), rhs);
        lu.solve_in_place(rhs);
        return rhs;
    });
}

// ---------------------------------------------------------------------------
// nonlinear HSS-like

/// U(x) = (αI+H)⁻¹((αI-S)x + |x| + b)
template <Scalar T>
[[nodiscard]] Vector<T> hss_like_first_half(const ShiftedFactors<T> &f, const Vector<T> &b, const Vector<T> &x) {
    if (x.size() != f.size() || b.size() != f.size()) {
        throw dimension_error("hss_like_step: dimension mismatch");
    }
    Vector<T> rhs = f.shift_minus(f.splitting().S, x);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] += T(modulus(x[i])) + b[i];
    }
    return f.solve_hermitian_shift(std::move(rhs));
}

/// V(x) = (αI+S)⁻¹((αI-H)x + |x| + b)
template <Scalar T>
[[nodiscard]] Vector<T> hss_like_second_half(const ShiftedFactors<T> &f, const Vector<T> &b, const Vector<T> &x) {
    if (x.size() != f.size() || b.size() != f.size()) {
        throw dimension_error("hss_like_step: dimension mismatch");
    }
    Vector<T> rhs = f.shift_minus(f.splitting().H, x);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] += T(modulus(x[i])) + b[i];
    }
    return f.solve_skew_shift(std::move(rhs));
}

/// ψ(x) = V(U(x)); |x| is refreshed at the half step.
template <Scalar T>
[[nodiscard]] Vector<T> hss_like_step(const ShiftedFactors<T> &f, const Vector<T> &b, const Vector<T> &x) {
    return hss_like_second_half(f, b, hss_like_first_half(f, b, x));
}

template <Scalar T>
[[nodiscard]] SolveReport<T> hss_like(const AveProblem<T> &p, const ShiftedFactors<T> &f, const AveSolveOptions<T> &opts = {}) {
    detail::Driver<T> d(p, opts);
    return detail::run_single_level(d, [&](const Vector<T> &x) { return hss_like_step(f, p.b(), x); });
}

template <Scalar T>
[[nodiscard]] SolveReport<T> hss_like(const AveProblem<T> &p, double alpha, const AveSolveOptions<T> &opts = {}) {
    detail::Driver<T> d(p, opts);
    std::optional<ShiftedFactors<T>> f;
    try {
        f.emplace(split(p.A()), alpha);
    } catch (const factorization_error &e) {
        return d.fail(e);
    }
    return detail::run_single_level(d, [&](const Vector<T> &x) { return hss_like_step(*f, p.b(), x); });
}

// ---------------------------------------------------------------------------
// residual-updating form of the HSS-like iteration

/// r = |x| + b - A x
template <Scalar T>
[[nodiscard]] Vector<T> ave_defect(const AveProblem<T> &p, const Vector<T> &x) {
    Vector<T> r = spmv(p.A(), x);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = T(modulus(x[i])) + p.b()[i] - r[i];
    }
    return r;
}

/// One sweep: x½ = x + (αI+H)⁻¹ r(x), then x + (αI+S)⁻¹ r(x½).
template <Scalar T>
[[nodiscard]] Vector<T> hss_like_residual_step(const AveProblem<T> &p, const ShiftedFactors<T> &f, const Vector<T> &x) {
    Vector<T> half = f.solve_hermitian_shift(ave_defect(p, x));
    axpy<T>(T{ 1 }, x, half);
    Vector<T> next = f.solve_skew_shift(ave_defect(p, half));
    axpy<T>(T{ 1 }, half, next);
    return next;
}

template <Scalar T>
[[nodiscard]] SolveReport<T> hss_like_residual_variant(const AveProblem<T> &p, const ShiftedFactors<T> &f, const AveSolveOptions<T> &opts = {}) {
    detail::Driver<T> d(p, opts);
    return detail::run_single_level(d, [&](const Vector<T> &x) { return hss_like_residual_step(p, f, x); });
}

template <Scalar T>
[[nodiscard]] SolveReport<T> hss_like_residual_variant(const AveProblem<T> &p, double alpha, const AveSolveOptions<T> &opts = {}) {
    detail::Driver<T> d(p, opts);
    std::optional<ShiftedFactors<T>> f;
    try {
        f.emplace(split(p.A()), alpha);
    } catch (const factorization_error &e) {
        return d.fail(e);
    }
    return detail::run_single_level(d, [&](const Vector<T> &x) { return hss_like_residual_step(p, *f, x); });
}

// ---------------------------------------------------------------------------
// Picard-HSS

/**
 * @brief Picard outer iteration with inexact inner HSS solves.
 *
 * Outer step k fixes c = |x_k| + b and runs HSS sweeps on A y = c from
 * y_0 = x_k. With s the accumulated increment y_l - x_k, the inner loop
 * stops at the first l ≥ 1 where ‖b_k - A s‖₂ ≤ η ‖b_k‖₂,
 * b_k = c - A x_k, or when l reaches max_inner.
 */
template <Scalar T>
[[nodiscard]] SolveReport<T> picard_hss(const AveProblem<T> &p, const ShiftedFactors<T> &f, const PicardHssOptions<T> &opts = {}) {
    opts.validate(p.size());
    detail::Driver<T> d(p, opts.base);
    auto &rep = d.report();
    const Vector<T> &b = p.b();
    for (;;) {
        if (const auto s = d.check()) {
            return d.finish(*s, true);
        }
        Vector<T> c = abs_vec(rep.x);
        axpy<T>(T{ 1 }, b, c);
        Vector<T> defect = spmv(p.A(), rep.x);
        for (std::size_t i = 0; i < defect.size(); ++i) {
            defect[i] = c[i] - defect[i];
        }
        const double defect_norm = norm2(defect);

        Vector<T> y = rep.x;
        std::size_t inner = 0;
        while (inner < opts.max_inner) {
            y = hss_sweep(f, c, y);
            ++inner;
            if (defect_norm == 0.0) {
                break;
            }
            // b_k - A s = c - A y
            Vector<T> r = spmv(p.A(), y);
            for (std::size_t i = 0; i < r.size(); ++i) {
                r[i] = c[i] - r[i];
            }
            const double inner_res = norm2(r);
            if (!std::isfinite(inner_res) || inner_res <= opts.eta * defect_norm) {
                break;
            }
        }
        rep.x = std::move(y);
        rep.inner_iterations.push_back(inner);
        ++rep.outer_iterations;
    }
}

template <Scalar T>
[[nodiscard]] SolveReport<T> picard_hss(const AveProblem<T> &p, double alpha, const PicardHssOptions<T> &opts = {}) {
    const auto start = detail::clock::now();
    std::optional<ShiftedFactors<T>> f;
    try {
        f.emplace(split(p.A()), alpha);
    } catch (const factorization_error &e) {
        detail::Driver<T> d(p, opts.base);
        return d.fail(e);
    }
    auto rep = picard_hss(p, *f, opts);
    rep.wall_time = std::chrono::duration<double>(detail::clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// dispatch

/// Runs `method`; alpha is ignored for Picard. Picard-HSS reads eta/max_inner from opts, the rest only opts.base.
template <Scalar T>
[[nodiscard]] SolveReport<T> solve(const AveProblem<T> &p, Method method, double alpha, const PicardHssOptions<T> &opts = {}) {
    switch (method) {
        case Method::Picard:
            return picard(p, opts.base);
        case Method::PicardHss:
            return picard_hss(p, alpha, opts);
        case Method::HssLike:
            return hss_like(p, alpha, opts.base);
        case Method::HssLikeResidual:
            return hss_like_residual_variant(p, alpha, opts.base);
    }
    throw std::invalid_argument("solve: unknown method");
}

}  // namespace ave
