#include "ave/splitting.hpp"
#include "random_problems.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <limits>
#include <random>

using ave::CsrMatrix;
using ave::Vector;
using ave::testing::C;

namespace {

template <typename T>
class SplittingTest : public ::testing::Test {};

using Fields = ::testing::Types<double, C>;
TYPED_TEST_SUITE(SplittingTest, Fields);

template <typename T>
double rel_diff(const CsrMatrix<T> &X, const CsrMatrix<T> &Y, double scale) {
    return ave::add(T{ 1 }, X, T{ -1 }, Y).frobenius_norm() / std::max(scale, 1e-300);
}

}  // namespace

TYPED_TEST(SplittingTest, IdentitiesOnRandomSparse) {
    using T = TypeParam;
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto A = ave::testing::random_sparse<T>(rng, 1 + trial % 17, 0.25);
        const auto hs = ave::split(A);
        const double scale = A.frobenius_norm();
        EXPECT_LE(rel_diff(ave::add(T{ 1 }, hs.H, T{ 1 }, hs.S), A, scale), 1e-14);
        EXPECT_LE(rel_diff(hs.H, hs.H.adjoint(), scale), 1e-14);
        EXPECT_LE(rel_diff(hs.S, ave::add(T{ 0 }, hs.S, T{ -1 }, hs.S.adjoint()), scale), 1e-14);
    }
}

TEST(Splitting, RealSymmetricMatrixHasZeroSkewPart) {
    const auto A = CsrMatrix<double>::from_triplets(2, 2, { { 0, 0, 2.0 }, { 0, 1, 1.0 }, { 1, 0, 1.0 }, { 1, 1, 2.0 } });
    const auto hs = ave::split(A);
    EXPECT_EQ(hs.S.nnz(), 0u);
    EXPECT_EQ(hs.H, A);
}

TEST(Splitting, ComplexDiagonalGoesToSkewPart) {
    const auto A = CsrMatrix<C>::from_triplets(1, 1, { { 0, 0, C(2, 3) } });
    const auto hs = ave::split(A);
    EXPECT_EQ(hs.H.at(0, 0), C(2, 0));
    EXPECT_EQ(hs.S.at(0, 0), C(0, 3));
}

TEST(Splitting, NonSquareThrows) {
    EXPECT_THROW((void)ave::split(CsrMatrix<double>(2, 3)), ave::dimension_error);
}

TYPED_TEST(SplittingTest, FactorizeAcrossAlphaRange) {
    using T = TypeParam;
    std::mt19937 rng(4);
    for (const double alpha : { 1e-3, 1.0, 1e3 }) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 5 + 3 * trial;
            const auto A = ave::testing::random_pd<T>(rng, n, 2);
            const auto f = ave::factorize(ave::split(A), alpha);
            EXPECT_DOUBLE_EQ(f.alpha(), alpha);
            const auto rhs = ave::testing::random_vector<T>(rng, n);
            // (αI + H) y = rhs and (αI + S) z = rhs
            const auto y = ave::solve_hermitian_shift(f, rhs);
            const auto z = ave::solve_skew_shift(f, rhs);
            auto ry = ave::spmv(ave::shifted(f.splitting().H, T(alpha)), y);
            auto rz = ave::spmv(ave::shifted(f.splitting().S, T(alpha)), z);
            for (std::size_t i = 0; i < n; ++i) {
                ry[i] -= rhs[i];
                rz[i] -= rhs[i];
            }
            EXPECT_LE(ave::norm2(ry) / ave::norm2(rhs), 1e-12);
            EXPECT_LE(ave::norm2(rz) / ave::norm2(rhs), 1e-12);
        }
    }
}

TEST(Splitting, ShiftMinus) {
    const auto A = CsrMatrix<double>::from_triplets(2, 2, { { 0, 0, 2.0 }, { 0, 1, -1.0 }, { 1, 0, 1.0 }, { 1, 1, 2.0 } });
    const auto f = ave::factorize(ave::split(A), 1.0);
    // (αI - H) x with H = 2I, x = (1, 2) gives (-1, -2)
    const auto y = f.shift_minus(f.splitting().H, { 1.0, 2.0 });
    EXPECT_DOUBLE_EQ(y[0], -1.0);
    EXPECT_DOUBLE_EQ(y[1], -2.0);
}

TEST(Splitting, InvalidAlpha) {
    const auto hs = ave::split(CsrMatrix<double>::identity(2));
    EXPECT_THROW((void)ave::factorize(hs, 0.0), std::invalid_argument);
    EXPECT_THROW((void)ave::factorize(hs, -1.0), std::invalid_argument);
    EXPECT_THROW((void)ave::factorize(hs, std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST(Splitting, IndefiniteHermitianPartFailsToFactor) {
    const auto hs = ave::split(CsrMatrix<double>::identity(2, -3.0));
    EXPECT_THROW((void)ave::factorize(hs, 1.0), ave::factorization_error);
    EXPECT_NO_THROW((void)ave::factorize(hs, 4.0));
}
