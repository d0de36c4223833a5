/**
 * @file
 * @brief Brute-force ground truth for small real AVE instances.
 *
 * On real vectors |x| = D x with D = diag(sign(x)), so every solution of
 * Ax - |x| = b solves (A - D) y = b for one of the 2ⁿ sign patterns and is
 * consistent with it. Enumerating all patterns finds every solution. The
 * dense algebra here goes through Eigen and shares nothing with the
 * library's banded factorizations.
 */

#pragma once

#include "ave/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ave {

struct OracleResult {
    std::vector<Vector<double>> solutions;  ///< lexicographically sorted
    bool exhaustive{ true };                ///< false when a singular but consistent pattern was met
};

namespace detail {

[[nodiscard]] inline Eigen::MatrixXd to_eigen(const CsrMatrix<double> &A) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(A.nrows()), static_cast<Eigen::Index>(A.ncols()));
    for (const auto &t : A.triplets()) {
        d(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    }
    return d;
}

}  // namespace detail

inline constexpr std::size_t oracle_default_limit = 20;

[[nodiscard]] inline OracleResult sign_enumeration_solve(const CsrMatrix<double> &A, const Vector<double> &b, std::size_t n_limit = oracle_default_limit) {
    const std::size_t n = b.size();
    if (!A.is_square() || A.nrows() != n) {
        throw dimension_error("oracle: A must be n x n with n = length(b)");
    }
    if (n > n_limit || n >= 63) {
        throw std::invalid_argument("oracle: n = " + std::to_string(n) + " exceeds the enumeration limit " + std::to_string(n_limit));
    }
    const Eigen::MatrixXd Ad = detail::to_eigen(A);
    const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(n));
    const double bscale = std::max(1.0, rhs.norm());

    OracleResult out;
    const std::uint64_t patterns = std::uint64_t{ 1 } << n;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        // bit i set -> d_i = -1
        Eigen::MatrixXd M = Ad;
        for (std::size_t i = 0; i < n; ++i) {
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= ((mask >> i) & 1U) ? -1.0 : 1.0;
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        const Eigen::VectorXd y = lu.solve(rhs);
        if (!lu.isInvertible()) {
            if ((M * y - rhs).norm() <= 1e-10 * bscale) {
                // consistent singular pattern: a continuum of candidates we do not enumerate
                out.exhaustive = false;
            }
            continue;
        }
        const double yscale = std::max(1.0, y.lpNorm<Eigen::Infinity>());
        bool consistent = true;
        for (std::size_t i = 0; i < n && consistent; ++i) {
            const double d = ((mask >> i) & 1U) ? -1.0 : 1.0;
            consistent = d * y(static_cast<Eigen::Index>(i)) >= -1e-12 * yscale;
        }
        if (!consistent) {
            continue;
        }
        const Eigen::VectorXd r = Ad * y - y.cwiseAbs() - rhs;
        if (r.norm() > 1e-10 * bscale) {
            continue;
        }
        Vector<double> sol(y.data(), y.data() + n);
        const bool duplicate = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const Vector<double> &s) {
            double diff = 0.0;
            double mag = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                diff = std::max(diff, std::abs(s[i] - sol[i]));
                mag = std::max(mag, std::abs(s[i]));
            }
            return diff <= 1e-9 * mag;
        });
        if (!duplicate) {
            out.solutions.push_back(std::move(sol));
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    return out;
}

[[nodiscard]] inline double min_singular_value(const CsrMatrix<double> &A) {
    if (!A.is_square()) {
        throw dimension_error("min_singular_value: matrix must be square");
    }
    if (A.nrows() == 0) {
        return 0.0;
    }
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(detail::to_eigen(A));
    return svd.singularValues().minCoeff();
}

/// True when σ_min(A) > 1, the classical sufficient condition for a unique AVE solution for every b.
[[nodiscard]] inline bool min_singular_exceeds_one(const CsrMatrix<double> &A) {
    return min_singular_value(A) > 1.0 + 1e-12;
}

}  // namespace ave
