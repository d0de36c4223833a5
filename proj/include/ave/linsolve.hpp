/**
 * @file
 * @brief Stationary HSS iteration for non-Hermitian positive definite linear systems Ax = b.
 */

#pragma once

#include "ave/core.hpp"
#include "ave/factor.hpp"
#include "ave/splitting.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ave {

/// Residuals above this multiple of ‖b‖₂ count as divergence.
inline constexpr double divergence_factor = 1e10;

struct LinearIterOptions {
    double tol{ 1e-10 };
    std::size_t max_iter{ 500 };
    bool record_history{ true };

    void validate() const {
        if (!(tol > 0.0)) {
            throw std::invalid_argument("LinearIterOptions: tol must be positive");
        }
        if (max_iter < 1) {
            throw std::invalid_argument("LinearIterOptions: max_iter must be >= 1");
        }
    }
};

/// One HSS sweep x -> x_next for Ax = b against prebuilt factors.
template <Scalar T>
[[nodiscard]] Vector<T> hss_sweep(const ShiftedFactors<T> &f, const Vector<T> &b, const Vector<T> &x) {
    Vector<T> rhs = f.shift_minus(f.splitting().S, x);
    axpy<T>(T{ 1 }, b, rhs);
    const Vector<T> half = f.solve_hermitian_shift(std::move(rhs));
    rhs = f.shift_minus(f.splitting().H, half);
    axpy<T>(T{ 1 }, b, rhs);
    return f.solve_skew_shift(std::move(rhs));
}

/**
 * @brief HSS iteration for Ax = b.
 *
 * Stops when ‖b - Ax‖₂/‖b‖₂ ≤ tol (absolute when b = 0). The residual
 * history here is the linear residual, not the AVE one.
 */
template <Scalar T>
[[nodiscard]] SolveReport<T> hss_linear_solve(const CsrMatrix<T> &A, const Vector<T> &b, double alpha, const LinearIterOptions &opts = {},
                                              std::optional<Vector<T>> x0 = std::nullopt) {
    opts.validate();
    if (!A.is_square() || A.nrows() != b.size()) {
        throw dimension_error("hss_linear_solve: dimension mismatch");
    }
    const auto start = std::chrono::steady_clock::now();
    SolveReport<T> rep;
    rep.x = x0 ? std::move(*x0) : Vector<T>(b.size(), T{});
    if (rep.x.size() != b.size()) {
        throw dimension_error("hss_linear_solve: initial guess has wrong length");
    }
    const auto finish = [&](SolveStatus s) {
        rep.status = s;
        rep.total_iterations = rep.outer_iterations;
        rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    };

    std::optional<ShiftedFactors<T>> f;
    try {
        f.emplace(split(A), alpha);
    } catch (const factorization_error &e) {
        rep.message = e.what();
        return finish(SolveStatus::FactorizationFailure);
    }

    const double nb = norm2(b);
    const double scale = nb > 0.0 ? nb : 1.0;
    const auto residual = [&] {
        Vector<T> r = spmv(A, rep.x);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = b[i] - r[i];
        }
        return norm2(r);
    };

    for (;;) {
        const double res = residual();
        if (opts.record_history || rep.residual_history.empty()) {
            rep.residual_history.push_back(res);
        } else {
            rep.residual_history.back() = res;
        }
        if (!std::isfinite(res) || res > divergence_factor * scale) {
            return finish(SolveStatus::Diverged);
        }
        if (res <= opts.tol * scale) {
            return finish(SolveStatus::Converged);
        }
        if (rep.outer_iterations >= opts.max_iter) {
            return finish(SolveStatus::MaxIterations);
        }
        rep.x = hss_sweep(*f, b, rep.x);
        ++rep.outer_iterations;
    }
}

}  // namespace ave
