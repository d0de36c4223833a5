#include "ave/factor.hpp"
#include "ave/splitting.hpp"
#include "random_problems.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using ave::CsrMatrix;
using ave::Vector;
using ave::testing::C;

namespace {

template <typename T>
double backward_error(const CsrMatrix<T> &M, const Vector<T> &x, const Vector<T> &b) {
    auto r = ave::spmv(M, x);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= b[i];
    }
    return ave::norm2(r) / (M.frobenius_norm() * ave::norm2(x) + ave::norm2(b));
}

template <typename T>
class FactorTest : public ::testing::Test {};

using Fields = ::testing::Types<double, C>;
TYPED_TEST_SUITE(FactorTest, Fields);

}  // namespace

TYPED_TEST(FactorTest, CholeskyReconstructsHermitianPart) {
    using T = TypeParam;
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 15;
        const auto H = ave::split(ave::testing::random_pd<T>(rng, n, 1 + trial % 4)).H;
        const ave::CholeskyFactor<T> L(H);
        EXPECT_EQ(L.bandwidth(), H.bandwidth());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                T acc{};
                for (std::size_t k = 0; k < n; ++k) {
                    acc += L.lower(i, k) * ave::conj(L.lower(j, k));
                }
                EXPECT_NEAR(std::abs(acc - H.at(i, j)), 0.0, 1e-12);
            }
        }
    }
}

TYPED_TEST(FactorTest, CholeskySolveBackwardError) {
    using T = TypeParam;
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial * 7;
        const auto H = ave::split(ave::testing::random_pd<T>(rng, n, 3)).H;
        const auto b = ave::testing::random_vector<T>(rng, n);
        const auto x = ave::cholesky_factor(H).solve(b);
        EXPECT_LE(backward_error(H, x, b), 1e-12);
    }
}

TEST(Cholesky, RejectsIndefiniteAndNonSquare) {
    const auto M = CsrMatrix<double>::from_triplets(2, 2, { { 0, 0, 1.0 }, { 0, 1, 2.0 }, { 1, 0, 2.0 }, { 1, 1, 1.0 } });
    EXPECT_THROW((void)ave::cholesky_factor(M), ave::factorization_error);
    EXPECT_THROW((void)ave::cholesky_factor(CsrMatrix<double>::identity(2, -1.0)), ave::factorization_error);
    EXPECT_THROW((void)ave::cholesky_factor(CsrMatrix<double>(2, 3)), ave::dimension_error);
}

TEST(Cholesky, EmptyMatrix) {
    const ave::CholeskyFactor<double> L(CsrMatrix<double>(0, 0));
    EXPECT_EQ(L.size(), 0u);
    EXPECT_TRUE(L.solve({}).empty());
}

TYPED_TEST(FactorTest, LuReconstructsMatrix) {
    using T = TypeParam;
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 12;
        auto M = ave::testing::random_sparse<T>(rng, n, 0.5);
        M = ave::shifted(M, T(0.1));
        const ave::LuFactor<T> lu(M);
        const auto R = lu.reconstruct();
        const auto D = M.to_dense();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_NEAR(std::abs(R[i][j] - D[i][j]), 0.0, 1e-11);
            }
        }
    }
}

TYPED_TEST(FactorTest, LuSolveBackwardError) {
    using T = TypeParam;
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial * 9;
        const auto M = ave::testing::random_pd<T>(rng, n, 1 + trial % 5, 0.5, 5.0);
        const auto b = ave::testing::random_vector<T>(rng, n);
        const auto x = ave::lu_factor(M).solve(b);
        EXPECT_LE(backward_error(M, x, b), 1e-12);
    }
}

TEST(Lu, PivotsOnZeroDiagonal) {
    // [[0, 1], [1, 0]] needs a row swap
    const auto M = CsrMatrix<double>::from_triplets(2, 2, { { 0, 1, 1.0 }, { 1, 0, 1.0 } });
    const auto x = ave::lu_factor(M).solve({ 2.0, 3.0 });
    EXPECT_DOUBLE_EQ(x[0], 3.0);
    EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Lu, SkewShiftExample) {
    // (I + S) x = (1, 1) with S = [[0, -1], [1, 0]] gives x = (1, 0)
    const auto M = CsrMatrix<double>::from_triplets(2, 2, { { 0, 0, 1.0 }, { 0, 1, -1.0 }, { 1, 0, 1.0 }, { 1, 1, 1.0 } });
    const auto x = ave::lu_factor(M).solve({ 1.0, 1.0 });
    EXPECT_NEAR(x[0], 1.0, 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
}

TEST(Lu, SingularThrows) {
    const auto M = CsrMatrix<double>::from_triplets(2, 2, { { 0, 0, 1.0 }, { 0, 1, 2.0 }, { 1, 0, 2.0 }, { 1, 1, 4.0 } });
    EXPECT_THROW((void)ave::lu_factor(M), ave::factorization_error);
    EXPECT_THROW((void)ave::lu_factor(CsrMatrix<double>(3, 3)), ave::factorization_error);
}

TEST(Lu, SolveDimensionMismatch) {
    const auto lu = ave::lu_factor(CsrMatrix<double>::identity(3));
    EXPECT_THROW((void)lu.solve(Vector<double>(2)), ave::dimension_error);
}
