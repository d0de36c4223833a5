/**
 * @file
 * @brief Hermitian/skew-Hermitian splitting A = H + S and the shifted factors reused by every solver.
 */

#pragma once

#include "ave/core.hpp"
#include "ave/factor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ave {

template <Scalar T>
struct HssSplitting {
    CsrMatrix<T> H;  ///< ½(A + Aᴴ)
    CsrMatrix<T> S;  ///< ½(A - Aᴴ)
};

template <Scalar T>
[[nodiscard]] HssSplitting<T> split(const CsrMatrix<T> &A) {
    if (!A.is_square()) {
        throw dimension_error("split: matrix must be square");
    }
    const CsrMatrix<T> Ah = A.adjoint();
    return { add(T{ 0.5 }, A, T{ 0.5 }, Ah), add(T{ 0.5 }, A, T{ -0.5 }, Ah) };
}

/**
 * @brief Factorizations of αI + H (Cholesky) and αI + S (LU), built once per (A, α).
 *
 * Holds its own copy of the splitting since the half-steps need H x and S x
 * products alongside the solves. Immutable once built.
 */
template <Scalar T>
class ShiftedFactors {
  public:
    ShiftedFactors(HssSplitting<T> hs, double alpha) :
        split_{ std::move(hs) }, alpha_{ alpha } {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("factorize: alpha must be a positive finite number");
        }
        if (split_.H.nrows() != split_.S.nrows()) {
            throw dimension_error("factorize: H and S sizes differ");
        }
        herm_ = cholesky_factor(shifted(split_.H, T(alpha_)));
        skew_ = lu_factor(shifted(split_.S, T(alpha_)));
    }

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::size_t size() const noexcept { return split_.H.nrows(); }
    [[nodiscard]] const HssSplitting<T> &splitting() const noexcept { return split_; }
    [[nodiscard]] const CholeskyFactor<T> &herm_factor() const noexcept { return herm_; }
    [[nodiscard]] const LuFactor<T> &skew_factor() const noexcept { return skew_; }

    /// y with (αI + H) y = rhs
    [[nodiscard]] Vector<T> solve_hermitian_shift(Vector<T> rhs) const {
        if (rhs.size() != size()) {
            throw dimension_error("solve_hermitian_shift: dimension mismatch");
        }
        herm_.solve_in_place(rhs);
        return rhs;
    }

    /// y with (αI + S) y = rhs
    [[nodiscard]] Vector<T> solve_skew_shift(Vector<T> rhs) const {
        if (rhs.size() != size()) {
            throw dimension_error("solve_skew_shift: dimension mismatch");
        }
        skew_.solve_in_place(rhs);
        return rhs;
    }

    /// (αI - M) x for M = H or S.
    [[nodiscard]] Vector<T> shift_minus(const CsrMatrix<T> &M, const Vector<T> &x) const {
        Vector<T> y = spmv(M, x);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = T(alpha_) * x[i] - y[i];
        }
        return y;
    }

  private:
    HssSplitting<T> split_;
    double alpha_;
    CholeskyFactor<T> herm_;
    LuFactor<T> skew_;
};

template <Scalar T>
[[nodiscard]] ShiftedFactors<T> factorize(HssSplitting<T> hs, double alpha) {
    return ShiftedFactors<T>(std::move(hs), alpha);
}

template <Scalar T>
[[nodiscard]] Vector<T> solve_hermitian_shift(const ShiftedFactors<T> &f, Vector<T> rhs) {
    return f.solve_hermitian_shift(std::move(rhs));
}

template <Scalar T>
[[nodiscard]] Vector<T> solve_skew_shift(const ShiftedFactors<T> &f, Vector<T> rhs) {
    return f.solve_skew_shift(std::move(rhs));
}

}  // namespace ave
