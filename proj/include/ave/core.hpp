/**
 * @file
 * @brief Scalar traits, dense vectors, CSR sparse matrices and the AVE problem container.
 *
 * Everything in the library is templated on a scalar type which is either
 * `double` or `std::complex<double>`. A real matrix paired with complex
 * vectors is promoted with `promote<std::complex<double>>()`.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace ave {

// ---------------------------------------------------------------------------
// scalar traits

template <typename T>
struct is_complex : std::false_type {};
template <typename R>
struct is_complex<std::complex<R>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// The two supported fields.
template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

template <Scalar T>
[[nodiscard]] constexpr T conj(const T &v) {
    if constexpr (is_complex_v<T>) {
        return std::conj(v);
    } else {
        return v;
    }
}

/// Modulus for complex, absolute value for real.
template <Scalar T>
[[nodiscard]] inline double modulus(const T &v) {
    return std::abs(v);
}

template <Scalar T>
[[nodiscard]] inline double real_part(const T &v) {
    if constexpr (is_complex_v<T>) {
        return v.real();
    } else {
        return v;
    }
}

template <Scalar T>
[[nodiscard]] inline bool is_finite(const T &v) {
    if constexpr (is_complex_v<T>) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    } else {
        return std::isfinite(v);
    }
}

// ---------------------------------------------------------------------------
// dense vectors

template <Scalar T>
using Vector = std::vector<T>;

class dimension_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by Cholesky/LU when the matrix is not positive definite or is exactly singular.
class factorization_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <Scalar T>
void require_finite(std::span<const T> x, const char *what = "vector") {
    for (const T &v : x) {
        if (!is_finite(v)) {
            throw std::invalid_argument(std::string(what) + " contains non-finite entries");
        }
    }
}

template <Scalar T>
[[nodiscard]] double norm2(std::span<const T> x) {
    // scaled accumulation so 1e200-sized entries don't overflow
    double scale = 0.0;
    double ssq = 1.0;
    for (const T &v : x) {
        const double a = modulus(v);
        if (a == 0.0) {
            continue;
        }
        if (!std::isfinite(a)) {
            return a;
        }
        if (scale < a) {
            ssq = 1.0 + ssq * (scale / a) * (scale / a);
            scale = a;
        } else {
            ssq += (a / scale) * (a / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

template <Scalar T>
[[nodiscard]] double norm2(const Vector<T> &x) {
    return norm2(std::span<const T>(x));
}

template <Scalar T>
[[nodiscard]] bool all_finite(std::span<const T> x) {
    return std::all_of(x.begin(), x.end(), [](const T &v) { return is_finite(v); });
}

/// Component-wise |x|, returned in the same field with zero imaginary part.
template <Scalar T>
[[nodiscard]] Vector<T> abs_vec(std::span<const T> x) {
    Vector<T> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](const T &v) { return T(modulus(v)); });
    return out;
}

template <Scalar T>
[[nodiscard]] Vector<T> abs_vec(const Vector<T> &x) {
    return abs_vec(std::span<const T>(x));
}

/// y += a * x
template <Scalar T>
void axpy(T a, std::span<const T> x, std::span<T> y) {
    if (x.size() != y.size()) {
        throw dimension_error("axpy: length mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += a * x[i];
    }
}

template <Scalar T>
[[nodiscard]] Vector<T> subtract(const Vector<T> &a, const Vector<T> &b) {
    if (a.size() != b.size()) {
        throw dimension_error("subtract: length mismatch");
    }
    Vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

/// Lift a real vector into the field `To`.
template <Scalar To, Scalar From>
[[nodiscard]] Vector<To> promote(const Vector<From> &x) {
    return Vector<To>(x.begin(), x.end());
}

// ---------------------------------------------------------------------------
// CSR matrices

template <Scalar T>
struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
};

/**
 * @brief Compressed sparse row matrix.
 *
 * Canonical form: column indices strictly increasing within each row, no
 * explicitly stored zeros. All constructors produce canonical matrices.
 */
template <Scalar T>
class CsrMatrix {
  public:
    using value_type = T;

    CsrMatrix() = default;

    CsrMatrix(std::size_t nrows, std::size_t ncols) :
        nrows_{ nrows }, ncols_{ ncols }, row_ptr_(nrows + 1, 0) {}

    /// Build from raw CSR arrays; validates the structure and canonicalizes.
    CsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_ptr,
              std::vector<std::size_t> col_idx, std::vector<T> values) :
        nrows_{ nrows }, ncols_{ ncols }, row_ptr_{ std::move(row_ptr) }, col_idx_{ std::move(col_idx) }, values_{ std::move(values) } {
        if (row_ptr_.size() != nrows_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
            throw std::invalid_argument("CsrMatrix: inconsistent CSR arrays");
        }
        for (std::size_t i = 0; i < nrows_; ++i) {
            if (row_ptr_[i] > row_ptr_[i + 1]) {
                throw std::invalid_argument("CsrMatrix: row_ptr must be nondecreasing");
            }
        }
        for (const std::size_t c : col_idx_) {
            if (c >= ncols_) {
                throw std::invalid_argument("CsrMatrix: column index out of range");
            }
        }
        canonicalize_in_place();
    }

    /// Duplicates are summed; zeros (including cancellations) dropped.
    [[nodiscard]] static CsrMatrix from_triplets(std::size_t nrows, std::size_t ncols, std::vector<Triplet<T>> entries) {
        for (const auto &e : entries) {
            if (e.row >= nrows || e.col >= ncols) {
                throw std::invalid_argument("CsrMatrix: triplet index out of range");
            }
        }
        std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        CsrMatrix m(nrows, ncols);
        m.col_idx_.reserve(entries.size());
        m.values_.reserve(entries.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < nrows; ++i) {
            while (k < entries.size() && entries[k].row == i) {
                const std::size_t c = entries[k].col;
                T sum{};
                while (k < entries.size() && entries[k].row == i && entries[k].col == c) {
                    sum += entries[k].value;
                    ++k;
                }
                if (sum != T{}) {
                    m.col_idx_.push_back(c);
                    m.values_.push_back(sum);
                }
            }
            m.row_ptr_[i + 1] = m.col_idx_.size();
        }
        return m;
    }

    [[nodiscard]] static CsrMatrix identity(std::size_t n, T diag = T{ 1 }) {
        std::vector<Triplet<T>> t;
        t.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            t.push_back({ i, i, diag });
        }
        return from_triplets(n, n, std::move(t));
    }

    [[nodiscard]] std::size_t nrows() const noexcept { return nrows_; }
    [[nodiscard]] std::size_t ncols() const noexcept { return ncols_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
    [[nodiscard]] bool is_square() const noexcept { return nrows_ == ncols_; }
    [[nodiscard]] const std::vector<std::size_t> &row_ptr() const noexcept { return row_ptr_; }
    [[nodiscard]] const std::vector<std::size_t> &col_idx() const noexcept { return col_idx_; }
    [[nodiscard]] const std::vector<T> &values() const noexcept { return values_; }

    /// Entry lookup by binary search within the row; zero if not stored.
    [[nodiscard]] T at(std::size_t i, std::size_t j) const {
        if (i >= nrows_ || j >= ncols_) {
            throw std::out_of_range("CsrMatrix::at");
        }
        const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
        const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
        const auto it = std::lower_bound(first, last, j);
        if (it != last && *it == j) {
            return values_[static_cast<std::size_t>(it - col_idx_.begin())];
        }
        return T{};
    }

    [[nodiscard]] std::vector<Triplet<T>> triplets() const {
        std::vector<Triplet<T>> t;
        t.reserve(nnz());
        for (std::size_t i = 0; i < nrows_; ++i) {
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                t.push_back({ i, col_idx_[k], values_[k] });
            }
        }
        return t;
    }

    /// Aᴴ (plain transpose for real T).
    [[nodiscard]] CsrMatrix adjoint() const {
        auto t = triplets();
        for (auto &e : t) {
            std::swap(e.row, e.col);
            e.value = ave::conj(e.value);
        }
        return from_triplets(ncols_, nrows_, std::move(t));
    }

    /// Largest |i - j| over stored entries.
    [[nodiscard]] std::size_t bandwidth() const noexcept {
        std::size_t bw = 0;
        for (std::size_t i = 0; i < nrows_; ++i) {
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                const std::size_t j = col_idx_[k];
                bw = std::max(bw, i > j ? i - j : j - i);
            }
        }
        return bw;
    }

    [[nodiscard]] std::vector<std::vector<T>> to_dense() const {
        std::vector<std::vector<T>> d(nrows_, std::vector<T>(ncols_, T{}));
        for (std::size_t i = 0; i < nrows_; ++i) {
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                d[i][col_idx_[k]] = values_[k];
            }
        }
        return d;
    }

    [[nodiscard]] double frobenius_norm() const {
        return norm2(std::span<const T>(values_));
    }

    template <Scalar To>
    [[nodiscard]] CsrMatrix<To> promote() const {
        return CsrMatrix<To>(nrows_, ncols_, row_ptr_, col_idx_, std::vector<To>(values_.begin(), values_.end()));
    }

    /// Returns the canonical form of this matrix (sorted columns, summed duplicates, no zeros).
    [[nodiscard]] CsrMatrix canonicalize() const {
        return from_triplets(nrows_, ncols_, triplets());
    }

    friend bool operator==(const CsrMatrix &, const CsrMatrix &) = default;

  private:
    void canonicalize_in_place() {
        *this = from_triplets(nrows_, ncols_, triplets());
    }

    std::size_t nrows_{ 0 };
    std::size_t ncols_{ 0 };
    std::vector<std::size_t> row_ptr_{ 0 };
    std::vector<std::size_t> col_idx_{};
    std::vector<T> values_{};
};

/// y = A x
template <Scalar T>
void spmv(const CsrMatrix<T> &A, std::span<const T> x, std::span<T> y) {
    if (A.ncols() != x.size() || A.nrows() != y.size()) {
        throw dimension_error("spmv: dimension mismatch");
    }
    const auto &rp = A.row_ptr();
    const auto &ci = A.col_idx();
    const auto &va = A.values();
    for (std::size_t i = 0; i < A.nrows(); ++i) {
        T sum{};
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            sum += va[k] * x[ci[k]];
        }
        y[i] = sum;
    }
}

template <Scalar T>
[[nodiscard]] Vector<T> spmv(const CsrMatrix<T> &A, const Vector<T> &x) {
    Vector<T> y(A.nrows());
    spmv(A, std::span<const T>(x), std::span<T>(y));
    return y;
}

/// alpha*A + beta*B, canonical.
template <Scalar T>
[[nodiscard]] CsrMatrix<T> add(T alpha, const CsrMatrix<T> &A, T beta, const CsrMatrix<T> &B) {
    if (A.nrows() != B.nrows() || A.ncols() != B.ncols()) {
        throw dimension_error("add: dimension mismatch");
    }
    auto t = A.triplets();
    for (auto &e : t) {
        e.value *= alpha;
    }
    for (auto e : B.triplets()) {
        e.value *= beta;
        t.push_back(e);
    }
    return CsrMatrix<T>::from_triplets(A.nrows(), A.ncols(), std::move(t));
}

/// shift*I + A
template <Scalar T>
[[nodiscard]] CsrMatrix<T> shifted(const CsrMatrix<T> &A, T shift) {
    if (!A.is_square()) {
        throw dimension_error("shifted: matrix must be square");
    }
    return add(T{ 1 }, A, T{ 1 }, CsrMatrix<T>::identity(A.nrows(), shift));
}

// ---------------------------------------------------------------------------
// AVE problem

/// Ax - |x| = b with optional known solution.
template <Scalar T>
class AveProblem {
  public:
    AveProblem(CsrMatrix<T> A, Vector<T> b, std::optional<Vector<T>> exact = std::nullopt) :
        A_{ std::move(A) }, b_{ std::move(b) }, exact_{ std::move(exact) } {
        if (!A_.is_square() || A_.nrows() != b_.size()) {
            throw dimension_error("AveProblem: A must be n x n with n = length(b)");
        }
        require_finite<T>(A_.values(), "matrix");
        require_finite<T>(b_, "right-hand side");
        if (exact_) {
            if (exact_->size() != b_.size()) {
                throw dimension_error("AveProblem: exact solution has wrong length");
            }
            require_finite<T>(*exact_, "exact solution");
            Vector<T> r = spmv(A_, *exact_);
            for (std::size_t i = 0; i < r.size(); ++i) {
                r[i] -= T(modulus((*exact_)[i])) + b_[i];
            }
            if (norm2(r) > 1e-12 * std::max(1.0, norm2(b_))) {
                throw std::invalid_argument("AveProblem: exact solution does not satisfy Ax - |x| = b");
            }
        }
    }

    [[nodiscard]] const CsrMatrix<T> &A() const noexcept { return A_; }
    [[nodiscard]] const Vector<T> &b() const noexcept { return b_; }
    [[nodiscard]] const std::optional<Vector<T>> &exact() const noexcept { return exact_; }
    [[nodiscard]] std::size_t size() const noexcept { return b_.size(); }

  private:
    CsrMatrix<T> A_;
    Vector<T> b_;
    std::optional<Vector<T>> exact_;
};

template <Scalar T>
struct Residual {
    Vector<T> r;          ///< A x - |x| - b
    double relative{};    ///< ‖r‖₂ / ‖b‖₂, or ‖r‖₂ when b = 0
    double absolute{};    ///< ‖r‖₂
    bool finite{ true };  ///< false when r has NaN/Inf entries
};

template <Scalar T>
[[nodiscard]] Residual<T> ave_residual(const AveProblem<T> &p, const Vector<T> &x) {
    if (x.size() != p.size()) {
        throw dimension_error("ave_residual: length mismatch");
    }
    Residual<T> res;
    res.r = spmv(p.A(), x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        res.r[i] -= T(modulus(x[i])) + p.b()[i];
    }
    res.finite = all_finite<T>(res.r);
    res.absolute = norm2(res.r);
    const double nb = norm2(p.b());
    res.relative = nb > 0.0 ? res.absolute / nb : res.absolute;
    return res;
}

// ---------------------------------------------------------------------------
// solve report

enum class SolveStatus { Converged, MaxIterations, Diverged, FactorizationFailure };

[[nodiscard]] inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged:
            return "Converged";
        case SolveStatus::MaxIterations:
            return "MaxIterations";
        case SolveStatus::Diverged:
            return "Diverged";
        case SolveStatus::FactorizationFailure:
            return "FactorizationFailure";
    }
    return "Unknown";
}

template <Scalar T>
struct SolveReport {
    Vector<T> x;
    SolveStatus status{ SolveStatus::MaxIterations };
    std::size_t outer_iterations{ 0 };
    /// One count per outer step; empty for single-level methods.
    std::vector<std::size_t> inner_iterations;
    std::size_t total_iterations{ 0 };
    /// Absolute residual norms ‖Ax - |x| - b‖₂, starting with the initial guess.
    std::vector<double> residual_history;
    double wall_time{ 0.0 };
    std::string message;

    [[nodiscard]] bool converged() const noexcept { return status == SolveStatus::Converged; }

    [[nodiscard]] double mean_inner() const noexcept {
        if (inner_iterations.empty()) {
            return 0.0;
        }
        std::size_t s = 0;
        for (const auto c : inner_iterations) {
            s += c;
        }
        return static_cast<double>(s) / static_cast<double>(inner_iterations.size());
    }
};

}  // namespace ave
