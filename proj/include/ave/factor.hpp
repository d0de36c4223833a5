/**
 * @file
 * @brief Direct band factorizations: Hermitian Cholesky and LU with partial pivoting.
 *
 * Both factorizations work on a band whose half-width is taken from the
 * sparsity pattern of the input. A matrix with no usable band structure
 * degenerates to dense storage (half-width n - 1), which is fine for the
 * small generic inputs the library accepts.
 */

#pragma once

#include "ave/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ave {

/// Breakdown threshold relative to the largest diagonal entry.
inline constexpr double cholesky_pivot_tolerance = 1e-14;

/**
 * @brief Banded Cholesky factor L with L Lᴴ = M.
 *
 * Only the lower triangle of M is read. L is stored row-wise: row i holds
 * columns [i - bw, i].
 */
template <Scalar T>
class CholeskyFactor {
  public:
    CholeskyFactor() = default;

    explicit CholeskyFactor(const CsrMatrix<T> &M) :
        n_{ M.nrows() }, bw_{ M.bandwidth() } {
        if (!M.is_square()) {
            throw dimension_error("cholesky: matrix must be square");
        }
        const std::size_t w = bw_ + 1;
        band_.assign(n_ * w, T{});
        double max_diag = 0.0;
        const auto &rp = M.row_ptr();
        const auto &ci = M.col_idx();
        const auto &va = M.values();
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
                const std::size_t j = ci[k];
                if (j <= i) {
                    entry(i, j) = va[k];
                }
                if (j == i) {
                    max_diag = std::max(max_diag, std::abs(real_part(va[k])));
                }
            }
        }
        const double tol = cholesky_pivot_tolerance * max_diag;

        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t lo = i > bw_ ? i - bw_ : 0;
            for (std::size_t j = lo; j <= i; ++j) {
                T sum = entry(i, j);
                const std::size_t klo = std::max(lo, j > bw_ ? j - bw_ : 0);
                for (std::size_t k = klo; k < j; ++k) {
                    sum -= entry(i, k) * ave::conj(entry(j, k));
                }
                if (j == i) {
                    const double d = real_part(sum);
                    if (!(d > tol)) {
                        throw factorization_error("cholesky: non-positive pivot " + std::to_string(d) + " at row " + std::to_string(i) + " (matrix not positive definite)");
                    }
                    entry(i, i) = T(std::sqrt(d));
                } else {
                    entry(i, j) = sum / entry(j, j);
                }
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return bw_; }

    /// L(i, j), zero outside the band or above the diagonal.
    [[nodiscard]] T lower(std::size_t i, std::size_t j) const {
        if (j > i || i - j > bw_) {
            return T{};
        }
        return band_[i * (bw_ + 1) + (j + bw_ - i)];
    }

    /// Solves L Lᴴ x = rhs in place.
    void solve_in_place(std::span<T> x) const {
        if (x.size() != n_) {
            throw dimension_error("cholesky solve: dimension mismatch");
        }
        for (std::size_t i = 0; i < n_; ++i) {
            T sum = x[i];
            const std::size_t lo = i > bw_ ? i - bw_ : 0;
            for (std::size_t k = lo; k < i; ++k) {
                sum -= entry(i, k) * x[k];
            }
            x[i] = sum / entry(i, i);
        }
        // Lᴴ y = z; column i of Lᴴ is row i of L conjugated
        for (std::size_t ii = n_; ii-- > 0;) {
            x[ii] /= entry(ii, ii);
            const T xi = x[ii];
            const std::size_t lo = ii > bw_ ? ii - bw_ : 0;
            for (std::size_t k = lo; k < ii; ++k) {
                x[k] -= ave::conj(entry(ii, k)) * xi;
            }
        }
    }

    [[nodiscard]] Vector<T> solve(Vector<T> rhs) const {
        solve_in_place(rhs);
        return rhs;
    }

  private:
    T &entry(std::size_t i, std::size_t j) { return band_[i * (bw_ + 1) + (j + bw_ - i)]; }
    const T &entry(std::size_t i, std::size_t j) const { return band_[i * (bw_ + 1) + (j + bw_ - i)]; }

    std::size_t n_{ 0 };
    std::size_t bw_{ 0 };
    std::vector<T> band_;
};

/**
 * @brief Banded LU with partial (row) pivoting.
 *
 * Stored the way LAPACK's gbtrf does it: the pivot row interchanges are
 * applied while eliminating, so the multipliers of step i live in a
 * per-column array and U gains at most `kl` extra superdiagonals of fill.
 */
template <Scalar T>
class LuFactor {
  public:
    LuFactor() = default;

    explicit LuFactor(const CsrMatrix<T> &M) :
        n_{ M.nrows() } {
        if (!M.is_square()) {
            throw dimension_error("lu: matrix must be square");
        }
        kl_ = ku_ = M.bandwidth();
        width_ = 2 * kl_ + ku_ + 1;
        rows_.assign(n_ * width_, T{});
        mult_.assign(n_ * std::max<std::size_t>(kl_, 1), T{});
        piv_.resize(n_);

        const auto &rp = M.row_ptr();
        const auto &ci = M.col_idx();
        const auto &va = M.values();
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
                at(i, ci[k]) = va[k];
            }
        }

        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t last_row = std::min(n_ - 1, i + kl_);
            const std::size_t last_col = std::min(n_ - 1, i + kl_ + ku_);
            std::size_t p = i;
            double best = std::abs(at(i, i));
            for (std::size_t r = i + 1; r <= last_row; ++r) {
                const double a = std::abs(at(r, i));
                if (a > best) {
                    best = a;
                    p = r;
                }
            }
            if (best == 0.0 || !std::isfinite(best)) {
                throw factorization_error("lu: matrix is singular (zero pivot in column " + std::to_string(i) + ")");
            }
            piv_[i] = p;
            if (p != i) {
                for (std::size_t c = i; c <= last_col; ++c) {
                    std::swap(at(i, c), at(p, c));
                }
            }
            const T pivot = at(i, i);
            for (std::size_t r = i + 1; r <= last_row; ++r) {
                const T l = at(r, i) / pivot;
                multiplier(i, r) = l;
                at(r, i) = T{};
                if (l == T{}) {
                    continue;
                }
                for (std::size_t c = i + 1; c <= last_col; ++c) {
                    at(r, c) -= l * at(i, c);
                }
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return kl_; }

    /// Row interchanged with row i at elimination step i.
    [[nodiscard]] const std::vector<std::size_t> &pivots() const noexcept { return piv_; }

    void solve_in_place(std::span<T> x) const {
        if (x.size() != n_) {
            throw dimension_error("lu solve: dimension mismatch");
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (piv_[i] != i) {
                std::swap(x[i], x[piv_[i]]);
            }
            const T xi = x[i];
            const std::size_t last_row = std::min(n_ - 1, i + kl_);
            for (std::size_t r = i + 1; r <= last_row; ++r) {
                x[r] -= multiplier(i, r) * xi;
            }
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            T sum = x[ii];
            const std::size_t last_col = std::min(n_ - 1, ii + kl_ + ku_);
            for (std::size_t c = ii + 1; c <= last_col; ++c) {
                sum -= at(ii, c) * x[c];
            }
            x[ii] = sum / at(ii, ii);
        }
    }

    [[nodiscard]] Vector<T> solve(Vector<T> rhs) const {
        solve_in_place(rhs);
        return rhs;
    }

    /// Dense U (upper triangular, including pivoting fill).
    [[nodiscard]] std::vector<std::vector<T>> upper() const {
        std::vector<std::vector<T>> u(n_, std::vector<T>(n_, T{}));
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t c = i; c <= std::min(n_ - 1, i + kl_ + ku_); ++c) {
                u[i][c] = at(i, c);
            }
        }
        return u;
    }

    /**
     * @brief Rebuild the dense matrix from the factors.
     *
     * Undoes the elimination steps on U in reverse order; used to check
     * P M = L U style reconstruction without forming the permuted L.
     */
    [[nodiscard]] std::vector<std::vector<T>> reconstruct() const {
        auto m = upper();
        for (std::size_t ii = n_; ii-- > 0;) {
            const std::size_t last_row = std::min(n_ - 1, ii + kl_);
            for (std::size_t r = ii + 1; r <= last_row; ++r) {
                const T l = multiplier(ii, r);
                for (std::size_t c = 0; c < n_; ++c) {
                    m[r][c] += l * m[ii][c];
                }
            }
            if (piv_[ii] != ii) {
                std::swap(m[ii], m[piv_[ii]]);
            }
        }
        return m;
    }

  private:
    // row r window starts at column r - kl
    T &at(std::size_t r, std::size_t c) { return rows_[r * width_ + (c + kl_ - r)]; }
    const T &at(std::size_t r, std::size_t c) const { return rows_[r * width_ + (c + kl_ - r)]; }
    T &multiplier(std::size_t step, std::size_t r) { return mult_[step * kl_ + (r - step - 1)]; }
    const T &multiplier(std::size_t step, std::size_t r) const { return mult_[step * kl_ + (r - step - 1)]; }

    std::size_t n_{ 0 };
    std::size_t kl_{ 0 };
    std::size_t ku_{ 0 };
    std::size_t width_{ 1 };
    std::vector<T> rows_;
    std::vector<T> mult_;
    std::vector<std::size_t> piv_;
};

template <Scalar T>
[[nodiscard]] CholeskyFactor<T> cholesky_factor(const CsrMatrix<T> &M) {
    return CholeskyFactor<T>(M);
}

template <Scalar T>
[[nodiscard]] LuFactor<T> lu_factor(const CsrMatrix<T> &M) {
    return LuFactor<T>(M);
}

}  // namespace ave
