/**
 * @file
 * @brief Convection-diffusion AVE test family on the unit square.
 *
 * Five-point differences for -Δu, central differences for q(u_x + u_y), plus
 * a diagonal shift p:
 *
 *     A = Tx ⊗ I_m + I_m ⊗ Ty + p I_n,   n = m²,
 *     Tx = tridiag(t2, 4, t3),  Ty = tridiag(t2, 0, t3),
 *     t2 = -1 - Re,  t3 = -1 + Re,  Re = q h / 2,  h = 1 / (m + 1).
 *
 * tridiag(a, b, c) puts a on the subdiagonal and c on the superdiagonal.
 */

#pragma once

#include "ave/core.hpp"

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ave {

struct ConvDiffSpec {
    std::size_t m{ 10 };
    double q{ 0.0 };
    double p{ 0.0 };

    void validate() const {
        if (m < 1) {
            throw std::invalid_argument("ConvDiffSpec: m must be >= 1");
        }
        if (!(q >= 0.0) || !std::isfinite(q) || !std::isfinite(p)) {
            throw std::invalid_argument("ConvDiffSpec: q must be finite and nonnegative, p finite");
        }
    }

    [[nodiscard]] std::size_t n() const noexcept { return m * m; }
    [[nodiscard]] double h() const noexcept { return 1.0 / static_cast<double>(m + 1); }
    [[nodiscard]] double reynolds() const noexcept { return q * h() / 2.0; }
};

[[nodiscard]] inline CsrMatrix<double> build_matrix(const ConvDiffSpec &spec) {
    spec.validate();
    const std::size_t m = spec.m;
    const std::size_t n = spec.n();
    const double re = spec.reynolds();
    const double t1 = 4.0;
    const double t2 = -1.0 - re;
    const double t3 = -1.0 + re;

    std::vector<Triplet<double>> t;
    t.reserve(5 * n);
    // global index = I * m + J; Tx acts on the block index I, Ty on the inner index J
    for (std::size_t I = 0; I < m; ++I) {
        for (std::size_t J = 0; J < m; ++J) {
            const std::size_t row = I * m + J;
            t.push_back({ row, row, t1 + spec.p });
            if (I > 0) {
                t.push_back({ row, row - m, t2 });
            }
            if (I + 1 < m) {
                t.push_back({ row, row + m, t3 });
            }
            if (J > 0) {
                t.push_back({ row, row - 1, t2 });
            }
            if (J + 1 < m) {
                t.push_back({ row, row + 1, t3 });
            }
        }
    }
    return CsrMatrix<double>::from_triplets(n, n, std::move(t));
}

/// x_k = (-1)^k i for k = 1..n, stored zero-based (x[0] = -i).
[[nodiscard]] inline Vector<std::complex<double>> exact_solution(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("exact_solution: n must be >= 1");
    }
    Vector<std::complex<double>> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = std::complex<double>(0.0, (k % 2 == 0) ? -1.0 : 1.0);
    }
    return x;
}

/// A promoted to complex, b = A x* - |x*| for the alternating ±i solution.
[[nodiscard]] inline AveProblem<std::complex<double>> build_problem(const ConvDiffSpec &spec) {
    using C = std::complex<double>;
    auto A = build_matrix(spec).promote<C>();
    auto x = exact_solution(spec.n());
    Vector<C> b = spmv(A, x);
    for (std::size_t i = 0; i < b.size(); ++i) {
        b[i] -= C(std::abs(x[i]));
    }
    return AveProblem<C>(std::move(A), std::move(b), std::move(x));
}

}  // namespace ave
