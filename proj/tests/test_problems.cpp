#include "ave/problems.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <vector>

using ave::ConvDiffSpec;
using C = std::complex<double>;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense kron(const Dense &X, const Dense &Y) {
    const std::size_t a = X.size(), b = Y.size();
    Dense K(a * b, std::vector<double>(a * b, 0.0));
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            for (std::size_t k = 0; k < b; ++k)
                for (std::size_t l = 0; l < b; ++l)
                    K[i * b + k][j * b + l] = X[i][j] * Y[k][l];
    return K;
}

/// Dense reference: A = Tx ⊗ I + I ⊗ Ty + p I with tridiag(t2, t1, t3) factors
Dense dense_reference(const ConvDiffSpec &s) {
    const std::size_t m = s.m;
    const double re = s.reynolds();
    Dense T(m, std::vector<double>(m, 0.0)), I(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        T[i][i] = 2.0;
        I[i][i] = 1.0;
        if (i > 0) {
            T[i][i - 1] = -1.0 - re;
        }
        if (i + 1 < m) {
            T[i][i + 1] = -1.0 + re;
        }
    }
    auto A = kron(T, I);
    const auto B = kron(I, T);
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < A.size(); ++j) {
            A[i][j] += B[i][j];
        }
        A[i][i] += s.p;
    }
    return A;
}

}  // namespace

TEST(ConvDiff, SmallestGridIsPoissonStencil) {
    const auto A = ave::build_matrix({ 2, 0.0, 0.0 });
    const Dense expect{ { 4, -1, -1, 0 }, { -1, 4, 0, -1 }, { -1, 0, 4, -1 }, { 0, -1, -1, 4 } };
    EXPECT_EQ(A.to_dense(), expect);
}

TEST(ConvDiff, MatchesKroneckerReference) {
    for (const std::size_t m : { 1u, 2u, 3u, 5u, 8u }) {
        for (const double q : { 0.0, 1.0, 10.0, 100.0 }) {
            for (const double p : { 0.0, 0.5 }) {
                const ConvDiffSpec s{ m, q, p };
                const auto D = ave::build_matrix(s).to_dense();
                const auto R = dense_reference(s);
                for (std::size_t i = 0; i < D.size(); ++i) {
                    for (std::size_t j = 0; j < D.size(); ++j) {
                        EXPECT_NEAR(D[i][j], R[i][j], 1e-15);
                    }
                }
            }
        }
    }
}

TEST(ConvDiff, NonzeroCount) {
    for (const std::size_t m : { 1u, 2u, 10u, 20u, 40u }) {
        const auto A = ave::build_matrix({ m, 10.0, 0.5 });
        EXPECT_EQ(A.nnz(), 5 * m * m - 4 * m) << "m=" << m;
        EXPECT_EQ(A.bandwidth(), m == 1 ? 0u : m);
    }
}

TEST(ConvDiff, CellReynoldsOneDropsUpperCoupling) {
    // h = 1/3, q = 6: Re = 1 so t3 = 0, t2 = -2
    const auto A = ave::build_matrix({ 2, 6.0, 0.0 });
    EXPECT_DOUBLE_EQ(A.at(1, 0), -2.0);
    EXPECT_DOUBLE_EQ(A.at(0, 1), 0.0);
    EXPECT_EQ(A.nnz(), 8u);
}

TEST(ConvDiff, ExactSolutionAlternates) {
    const auto x = ave::exact_solution(5);
    for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_EQ(x[k], k % 2 == 0 ? C(0, -1) : C(0, 1));
    }
}

TEST(ConvDiff, SingleCellProblem) {
    // m = 1: A = 4, x = -i, b = 4(-i) - 1
    const auto p = ave::build_problem({ 1, 0.0, 0.0 });
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(std::abs(p.b()[0] - C(-1, -4)), 0.0, 1e-15);
}

TEST(ConvDiff, ProblemIsConsistent) {
    const auto p = ave::build_problem({ 10, 100.0, 0.5 });
    EXPECT_LE(ave::ave_residual(p, *p.exact()).relative, 1e-14);
}

TEST(ConvDiff, InvalidSpec) {
    EXPECT_THROW((void)ave::build_matrix({ 0, 0.0, 0.0 }), std::invalid_argument);
    EXPECT_THROW((void)ave::build_matrix({ 2, -1.0, 0.0 }), std::invalid_argument);
}
